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
#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <vector>

#include "fecam/device_model.hpp"
#include "fecam/kernels/kernels.hpp"

namespace {

using namespace fecam::kernels;

std::vector<const KernelTable*> variants() {
    std::vector<const KernelTable*> out;
    for (Isa isa : available_isas())
        if (isa != Isa::Scalar) out.push_back(kernels_for(isa));
    return out;
}

TEST(Kernels, ScalarAlwaysAvailable) {
    EXPECT_EQ(scalar_kernels().isa, Isa::Scalar);
    EXPECT_EQ(kernels_for(Isa::Scalar), &scalar_kernels());
    EXPECT_EQ(isa_name(Isa::Scalar), "scalar");
    EXPECT_EQ(isa_name(Isa::Avx2), "avx2");
    const auto isas = available_isas();
    ASSERT_FALSE(isas.empty());
    EXPECT_EQ(isas.front(), Isa::Scalar);
}

TEST(Kernels, EnvironmentCanForceScalar) {
    const char* forced = std::getenv("FECAM_KERNELS");
    if (forced && std::string(forced) == "scalar") EXPECT_EQ(active_kernels().isa, Isa::Scalar);
    else EXPECT_EQ(active_kernels().isa, available_isas().back());
}

TEST(Kernels, ScalarSumMatchesDeviceModel) {
    const fecam::DeviceParams p;
    const ChannelModel m = ChannelModel::from(p);
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(-0.5, 1.6);
    for (int n : {0, 1, 3, 17, 64}) {
        std::vector<double> gate(n), vth(n);
        double expected = 0.0;
        for (int i = 0; i < n; ++i) {
            gate[i] = u(rng);
            vth[i] = u(rng);
            expected += fecam::channel_current(p, gate[i] - vth[i]);
        }
        EXPECT_NEAR(scalar_kernels().sum_channel_currents(m, gate, vth), expected, 1e-12 * expected + 1e-30);
    }
}

TEST(Kernels, CurrentSumEquivalence) {
    const ChannelModel m = ChannelModel::from(fecam::DeviceParams{});
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 2.0);
    std::uniform_int_distribution<int> len(0, 300);
    for (const KernelTable* k : variants())
        for (int trial = 0; trial < 2000; ++trial) {
            const int n = len(rng);
            std::vector<double> gate(n), vth(n);
            for (int i = 0; i < n; ++i) {
                gate[i] = u(rng);
                vth[i] = trial % 3 == 0 ? gate[i] - 0.0005 * i : u(rng);
            }
            const double ref = scalar_kernels().sum_channel_currents(m, gate, vth);
            const double got = k->sum_channel_currents(m, gate, vth);
            ASSERT_NEAR(got, ref, 1e-12 * ref + 1e-30) << isa_name(k->isa) << ' ' << n;
        }
}

TEST(Kernels, TernaryMatchEquivalence) {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> len(0, 200);
    std::uniform_int_distribution<std::uint32_t> word;
    for (const KernelTable* k : variants())
        for (int trial = 0; trial < 3000; ++trial) {
            const int n = len(rng);
            std::vector<std::uint32_t> value(n), care(n);
            const std::uint32_t key = word(rng) & 0xFFFu;
            for (int i = 0; i < n; ++i) {
                care[i] = word(rng) & 0xFFFu;
                value[i] = (trial % 2 ? key : word(rng)) & care[i];
                if (i < n - 1 && trial % 5) value[i] ^= care[i] & (1u << (i % 12));
            }
            ASSERT_EQ(k->first_ternary_match(value, care, key),
                      scalar_kernels().first_ternary_match(value, care, key));
        }
}

TEST(Kernels, DigitRangeMatchEquivalence) {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> len(0, 100);
    std::uniform_int_distribution<int> digit(0, 7);
    for (const KernelTable* k : variants())
        for (int trial = 0; trial < 3000; ++trial) {
            const std::size_t n = len(rng);
            const std::size_t d = 1 + trial % 8;
            std::vector<std::int32_t> lo(n * d), hi(n * d), key(d);
            for (auto& v : key) v = digit(rng);
            for (std::size_t i = 0; i < n * d; ++i) {
                int a = digit(rng), b = digit(rng);
                if (a > b) std::swap(a, b);
                if (trial % 3 == 0) b = 7, a = std::min(a, 2);
                lo[i] = a;
                hi[i] = b;
            }
            ASSERT_EQ(k->first_digit_range_match(lo, hi, n, key),
                      scalar_kernels().first_digit_range_match(lo, hi, n, key));
        }
}

TEST(Kernels, KnownAnswers) {
    const std::vector<std::uint32_t> value{0b100, 0b010, 0b011};
    const std::vector<std::uint32_t> care{0b111, 0b110, 0b111};
    for (Isa isa : available_isas()) {
        const KernelTable& k = *kernels_for(isa);
        EXPECT_EQ(k.first_ternary_match(value, care, 0b011), 1);
        EXPECT_EQ(k.first_ternary_match(value, care, 0b100), 0);
        EXPECT_EQ(k.first_ternary_match(value, care, 0b111), -1);
        // Two entries, two digits: e0 = [0-3][0-7], e1 = [4-7][2-2].
        const std::vector<std::int32_t> lo{0, 4, 0, 2}, hi{3, 7, 7, 2};
        EXPECT_EQ(k.first_digit_range_match(lo, hi, 2, std::vector<std::int32_t>{5, 2}), 1);
        EXPECT_EQ(k.first_digit_range_match(lo, hi, 2, std::vector<std::int32_t>{1, 6}), 0);
        EXPECT_EQ(k.first_digit_range_match(lo, hi, 2, std::vector<std::int32_t>{5, 3}), -1);
    }
}

}  // namespace
