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
#include <random>
#include <vector>

#include "fecam/device_model.hpp"
#include "fecam/error.hpp"

namespace {

using fecam::DeviceParams;
using fecam::WritePulse;

// Phi(2.5) from a 30-digit mpmath evaluation.
constexpr double kPhiAt2p5 = 0.993790334674223864833;

std::vector<double> amplitude_grid() {
    std::vector<double> grid;
    for (int k = 0; k <= 40; ++k) grid.push_back(2.0 + 0.05 * k);
    return grid;
}

TEST(DeviceModel, EraseLeavesNoSwitchedDomains) {
    const DeviceParams p;
    EXPECT_EQ(fecam::polarization_after_pulse(p, {-4.0}), 0.0);
    EXPECT_EQ(fecam::vth_from_pulse(p, {-4.0}), p.vth_high);
}

TEST(DeviceModel, CoerciveMeanSwitchesHalf) {
    const DeviceParams p;
    EXPECT_DOUBLE_EQ(fecam::polarization_after_pulse(p, {p.coercive_mu}), 0.5);
}

TEST(DeviceModel, MaxAmplitudeReachesLowThreshold) {
    const DeviceParams p;
    const double frac = fecam::polarization_after_pulse(p, {4.0});
    EXPECT_NEAR(frac, kPhiAt2p5, 1e-14);
    EXPECT_GE(frac, 0.99);
    const double vth = fecam::vth_from_pulse(p, {4.0});
    EXPECT_NEAR(vth, 0.106209665325776224, 1e-14);
    EXPECT_LE(vth - p.vth_low, 0.01 * (p.vth_high - p.vth_low));
}

TEST(DeviceModel, AmplitudeGridIsMonotone) {
    const DeviceParams p;
    const auto grid = amplitude_grid();
    ASSERT_EQ(grid.size(), 41u);
    double prev_p = -1.0, prev_vth = 10.0;
    for (double a : grid) {
        const double frac = fecam::polarization_after_pulse(p, {a});
        const double vth = fecam::vth_from_pulse(p, {a});
        EXPECT_GE(frac, 0.0);
        EXPECT_LE(frac, 1.0);
        EXPECT_GT(frac, prev_p) << a;
        EXPECT_LT(vth, prev_vth) << a;
        prev_p = frac;
        prev_vth = vth;
    }
    EXPECT_GT(prev_p, 0.99);
}

TEST(DeviceModel, StateIsAffineInPolarization) {
    const DeviceParams p;
    for (double a : amplitude_grid()) {
        const auto s = fecam::state_from_pulse(p, {a});
        EXPECT_DOUBLE_EQ(s.vth, p.vth_high - s.polarization_fraction * (p.vth_high - p.vth_low));
        EXPECT_GE(s.vth, p.vth_low);
        EXPECT_LE(s.vth, p.vth_high);
    }
}

TEST(DeviceModel, InvalidPulsesAreRejected) {
    const DeviceParams p;
    for (double a : {1.99, 4.01, -3.9, 0.0, -4.5}) {
        try {
            fecam::polarization_after_pulse(p, {a});
            FAIL() << "accepted amplitude " << a;
        } catch (const fecam::Error& e) {
            EXPECT_EQ(e.category(), fecam::ErrorCategory::InvalidPulse);
        }
    }
    EXPECT_THROW(fecam::vth_from_pulse(p, {3.0, 0.0}), fecam::Error);
}

TEST(DeviceModel, PulseForVthEndpoints) {
    const DeviceParams p;
    EXPECT_EQ(fecam::pulse_for_vth(p, p.vth_high).amplitude, p.v_erase);
    const double mid = 0.5 * (p.vth_low + p.vth_high);
    EXPECT_NEAR(fecam::pulse_for_vth(p, mid).amplitude, p.coercive_mu, 1e-9);
}

TEST(DeviceModel, PulseForVthRoundTripRandomTargets) {
    const DeviceParams p;
    const auto reach = fecam::programmable_vth_range(p);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> target(reach.lowest, reach.highest);
    for (int i = 0; i < 100; ++i) {
        const double v = target(rng);
        const WritePulse pulse = fecam::pulse_for_vth(p, v);
        EXPECT_NEAR(fecam::vth_from_pulse(p, pulse), v, 1e-3);
        EXPECT_NEAR(fecam::vth_from_pulse(p, pulse), v, 1e-9);
    }
}

TEST(DeviceModel, AmplitudeRoundTrip) {
    const DeviceParams p;
    for (double a : amplitude_grid()) {
        const double back = fecam::pulse_for_vth(p, fecam::vth_from_pulse(p, {a})).amplitude;
        EXPECT_NEAR(back, a, 1e-6) << a;
    }
}

TEST(DeviceModel, PulseForVthOutOfRange) {
    const DeviceParams p;
    for (double v : {0.05, 1.2, 0.101, 1.099}) {
        try {
            fecam::pulse_for_vth(p, v);
            FAIL() << "accepted target " << v;
        } catch (const fecam::Error& e) {
            EXPECT_EQ(e.category(), fecam::ErrorCategory::OutOfRange);
        }
    }
}

TEST(DeviceModel, DrainCurrentAtThreshold) {
    const DeviceParams p;
    EXPECT_DOUBLE_EQ(fecam::drain_current(p, 0.5, 1.0, 0.5), p.i_threshold);
    EXPECT_DOUBLE_EQ(fecam::drain_current(p, 0.5, 0.05, 0.5), 0.5 * p.i_threshold);
}

TEST(DeviceModel, DrainCurrentFloorAndCeiling) {
    const DeviceParams p;
    const double deep = 0.5 - 10.0 * p.subthreshold_slope;
    EXPECT_NEAR(fecam::drain_current(p, deep, 1.0, 0.5), p.i_off, 1e-3 * p.i_off + 1e-17);
    EXPECT_EQ(fecam::drain_current(p, 1.2, 1.0, 0.1), p.i_on);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> volts(-1.0, 2.0);
    for (int i = 0; i < 2000; ++i) {
        const double id = fecam::drain_current(p, volts(rng), 1.0, 0.1 + volts(rng) / 3.0);
        EXPECT_GE(id, p.i_off);
        EXPECT_LE(id, p.i_on);
    }
}

TEST(DeviceModel, DrainCurrentMonotoneAndContinuous) {
    const DeviceParams p;
    const double vth = 0.6;
    double prev = 0.0;
    for (int k = 0; k <= 1200; ++k) {
        const double id = fecam::drain_current(p, k * 1e-3, 1.0, vth);
        EXPECT_GE(id, prev);
        prev = id;
    }
    for (int k = 0; k <= 100; ++k) {
        const double a = fecam::drain_current(p, 0.9, k * 2e-3, vth);
        const double b = fecam::drain_current(p, 0.9, (k + 1) * 2e-3, vth);
        EXPECT_LE(a, b);
    }
    // Threshold seam and the i_on clamp seam.
    const double clamp_vgs = vth + p.subthreshold_slope *
                                       std::log10((p.i_on - p.i_off) / (p.i_threshold - p.i_off));
    for (double seam : {vth, clamp_vgs}) {
        const double eps = 1e-6;
        const double jump = std::abs(fecam::drain_current(p, seam + eps, 1.0, vth) -
                                     fecam::drain_current(p, seam, 1.0, vth));
        EXPECT_LT(jump, 1e-3 * fecam::drain_current(p, seam, 1.0, vth));
    }
}

TEST(DeviceModel, TransferFamilyShiftsRigidly) {
    const DeviceParams p;
    // 8 equally spaced thresholds: I(v_gs; vth_k) == I(v_gs - k*dv; vth_0).
    const double dv = 0.1;
    for (int k = 1; k < 8; ++k) {
        for (int j = 0; j <= 100; ++j) {
            const double v = 0.3 + j * 0.01;
            EXPECT_NEAR(fecam::drain_current(p, v + k * dv, 1.0, 0.2 + k * dv),
                        fecam::drain_current(p, v, 1.0, 0.2), 1e-12 * p.i_on);
        }
    }
}

TEST(DeviceModel, VariationZeroSigmaIsIdentity) {
    const DeviceParams p;
    EXPECT_EQ(fecam::apply_variation(p, 0.37, 0.0, 42), 0.37);
}

TEST(DeviceModel, VariationIsDeterministicAndClamped) {
    const DeviceParams p;
    EXPECT_EQ(fecam::apply_variation(p, 0.6, 0.05, 9), fecam::apply_variation(p, 0.6, 0.05, 9));
    EXPECT_NE(fecam::apply_variation(p, 0.6, 0.05, 9), fecam::apply_variation(p, 0.6, 0.05, 10));
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const double v = fecam::apply_variation(p, 0.15, 0.5, s);
        EXPECT_GE(v, p.vth_low);
        EXPECT_LE(v, p.vth_high);
    }
    EXPECT_THROW(fecam::apply_variation(p, 0.6, -0.01, 1), fecam::Error);
}

TEST(DeviceModel, VariationMeanConverges) {
    const DeviceParams p;
    const double sigma = 0.02;
    const int n = 100000;
    double sum = 0.0;
    for (int s = 0; s < n; ++s) sum += fecam::apply_variation(p, 0.6, sigma, static_cast<std::uint64_t>(s));
    EXPECT_NEAR(sum / n, 0.6, 3.0 * sigma / std::sqrt(double(n)));
}

TEST(DeviceModel, ParamsValidation) {
    DeviceParams p;
    EXPECT_NO_THROW(p.validate());
    p.i_threshold = 2e-6;
    EXPECT_THROW(p.validate(), fecam::Error);
    p = {};
    p.coercive_sigma = 0.0;
    EXPECT_THROW(p.validate(), fecam::Error);
    p = {};
    p.vth_low = 1.2;
    EXPECT_THROW(p.validate(), fecam::Error);
}

}  // namespace
