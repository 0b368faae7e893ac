/*
 * Copyright 2026 The fecam-sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <algorithm>
#include <cmath>

#include "fecam/kernels/kernels.hpp"

namespace fecam::kernels {

namespace {

double sum_channel_currents_scalar(const ChannelModel& model, std::span<const double> gate,
                                   std::span<const double> vth) {
    double total = 0.0;
    for (std::size_t i = 0; i < gate.size(); ++i) {
        const double sub =
            model.i_off + (model.i_threshold - model.i_off) *
                              std::pow(10.0, (gate[i] - vth[i]) / model.subthreshold_slope);
        total += std::min(sub, model.i_on);
    }
    return total;
}

std::ptrdiff_t first_ternary_match_scalar(std::span<const std::uint32_t> value,
                                          std::span<const std::uint32_t> care,
                                          std::uint32_t key) {
    for (std::size_t i = 0; i < value.size(); ++i)
        if ((key & care[i]) == value[i]) return static_cast<std::ptrdiff_t>(i);
    return -1;
}

std::ptrdiff_t first_digit_range_match_scalar(std::span<const std::int32_t> lo,
                                              std::span<const std::int32_t> hi,
                                              std::size_t n_entries,
                                              std::span<const std::int32_t> key_digits) {
    for (std::size_t e = 0; e < n_entries; ++e) {
        bool ok = true;
        for (std::size_t d = 0; d < key_digits.size() && ok; ++d) {
            const std::int32_t k = key_digits[d];
            ok = lo[d * n_entries + e] <= k && k <= hi[d * n_entries + e];
        }
        if (ok) return static_cast<std::ptrdiff_t>(e);
    }
    return -1;
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{Isa::Scalar, &sum_channel_currents_scalar,
                                   &first_ternary_match_scalar, &first_digit_range_match_scalar};
    return table;
}

}  // namespace fecam::kernels
