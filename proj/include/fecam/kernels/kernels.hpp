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
#pragma once

// Batch inner loops with a scalar reference implementation and optional
// SIMD variants. The active table is chosen once at runtime from the CPU
// features; FECAM_KERNELS=scalar|avx2 overrides the choice.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fecam/device_model.hpp"

namespace fecam::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// Saturated channel parameters pulled out of DeviceParams.
struct ChannelModel {
    double i_on;
    double i_off;
    double i_threshold;
    double subthreshold_slope;

    static ChannelModel from(const DeviceParams& params) {
        return {params.i_on, params.i_off, params.i_threshold, params.subthreshold_slope};
    }
};

struct KernelTable {
    Isa isa;

    /// sum_i min(i_off + (i_threshold - i_off) * 10^((gate[i] - vth[i]) / slope), i_on)
    double (*sum_channel_currents)(const ChannelModel& model, std::span<const double> gate,
                                   std::span<const double> vth);

    /// Index of the first entry with (key & care[i]) == value[i], or -1.
    std::ptrdiff_t (*first_ternary_match)(std::span<const std::uint32_t> value,
                                          std::span<const std::uint32_t> care,
                                          std::uint32_t key);

    /// Digit-range tables are stored digit-major: lo[d * n_entries + e].
    /// Returns the first entry whose every digit range contains key_digits[d], or -1.
    std::ptrdiff_t (*first_digit_range_match)(std::span<const std::int32_t> lo,
                                              std::span<const std::int32_t> hi,
                                              std::size_t n_entries,
                                              std::span<const std::int32_t> key_digits);
};

const KernelTable& scalar_kernels();

/// nullptr when the variant was not compiled in or the CPU lacks the features.
const KernelTable* kernels_for(Isa isa);

/// ISAs usable on this machine, scalar first.
std::vector<Isa> available_isas();

const KernelTable& active_kernels();

}  // namespace fecam::kernels
