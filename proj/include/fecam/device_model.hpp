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

#include <cstdint>

namespace fecam {

/// Single gate pulse applied to a FeFET. Positive amplitudes program toward
/// low V_TH, the (negative) erase amplitude resets the device to high V_TH.
struct WritePulse {
    double amplitude = 0.0;  // V
    double width = 1e-6;     // s, accepted but not used by the amplitude-only model
};

/// Programmed state of one ferroelectric transistor.
struct FeFetState {
    double vth = 1.1;                    // V
    double polarization_fraction = 0.0;  // fraction of switched domains, [0, 1]

    bool operator==(const FeFetState&) const = default;
};

/// Phenomenological FeFET parameters, SI units throughout.
struct DeviceParams {
    double vth_low = 0.1;              // V, fully switched
    double vth_high = 1.1;             // V, fully erased
    double coercive_mu = 3.0;          // V, mean domain switching amplitude
    double coercive_sigma = 0.4;       // V
    double subthreshold_slope = 0.080; // V/decade
    double i_on = 1e-6;                // A
    double i_off = 1e-12;              // A
    double i_threshold = 25e-9;        // A, current at v_gs == vth
    double v_dsat = 0.1;               // V
    double v_prog_min = 2.0;           // V
    double v_prog_max = 4.0;           // V
    double v_erase = -4.0;             // V

    /// Throws InvalidParameter when the parameter set is inconsistent.
    void validate() const;

    bool operator==(const DeviceParams&) const = default;
};

/// Throws InvalidPulse unless the amplitude is the erase amplitude or lies
/// in [v_prog_min, v_prog_max], and the width is positive.
void validate_pulse(const DeviceParams& params, const WritePulse& pulse);

/// Fraction of domains switched by a single pulse applied to an erased
/// device (erase-then-program): the Gaussian coercive-field CDF evaluated at
/// the pulse amplitude, or 0 for the erase pulse.
double polarization_after_pulse(const DeviceParams& params, const WritePulse& pulse);

double vth_from_polarization(const DeviceParams& params, double polarization_fraction);
double vth_from_pulse(const DeviceParams& params, const WritePulse& pulse);
FeFetState state_from_pulse(const DeviceParams& params, const WritePulse& pulse);

/// The V_TH interval reachable by a single programming pulse, i.e.
/// [vth(v_prog_max), vth(v_prog_min)]. vth_high is reachable via erase.
struct VthRange {
    double lowest;
    double highest;
};
VthRange programmable_vth_range(const DeviceParams& params);

/// Inverse of vth_from_pulse. Targets equal to vth_high return the erase
/// pulse; other targets are found by bisection on the amplitude. Throws
/// OutOfRange when the target is not reachable to within 1 mV.
WritePulse pulse_for_vth(const DeviceParams& params, double target_vth);

/// Drain current with an exponential subthreshold region that saturates
/// at i_on, scaled by min(v_ds / v_dsat, 1).
double drain_current(const DeviceParams& params, double v_gs, double v_ds, double vth);

/// Saturated channel current (v_ds >= v_dsat) as a function of overdrive
/// v_gs - vth. drain_current == channel_current * vds_factor.
double channel_current(const DeviceParams& params, double overdrive);
double vds_factor(const DeviceParams& params, double v_ds);

/// Adds a N(0, sigma) device-to-device offset and clamps to
/// [vth_low, vth_high]. Deterministic in the seed.
double apply_variation(const DeviceParams& params, double vth, double sigma_vth,
                       std::uint64_t seed);

}  // namespace fecam
