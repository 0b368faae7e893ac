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
#include "fecam/device_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "fecam/error.hpp"

namespace fecam {

namespace {

constexpr double kVthTolerance = 1e-3;

double standard_normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

[[noreturn]] void invalid(const std::string& what) {
    throw Error(ErrorCategory::InvalidParameter, "device: " + what);
}

}  // namespace

void DeviceParams::validate() const {
    if (!(vth_low < vth_high)) invalid("vth_low must be below vth_high");
    if (!(coercive_sigma > 0.0)) invalid("coercive_sigma must be positive");
    if (!(subthreshold_slope > 0.0)) invalid("subthreshold_slope must be positive");
    if (!(i_off > 0.0 && i_off < i_threshold && i_threshold < i_on))
        invalid("currents must satisfy 0 < i_off < i_threshold < i_on");
    if (!(v_dsat > 0.0)) invalid("v_dsat must be positive");
    if (!(0.0 < v_prog_min && v_prog_min < v_prog_max))
        invalid("programming range must satisfy 0 < v_prog_min < v_prog_max");
    if (!(v_erase < 0.0)) invalid("v_erase must be negative");
}

void validate_pulse(const DeviceParams& params, const WritePulse& pulse) {
    const bool is_erase = pulse.amplitude == params.v_erase;
    const bool in_range =
        pulse.amplitude >= params.v_prog_min && pulse.amplitude <= params.v_prog_max;
    if (!(is_erase || in_range)) {
        std::ostringstream msg;
        msg << "pulse amplitude " << pulse.amplitude << " V is neither the erase amplitude ("
            << params.v_erase << " V) nor within [" << params.v_prog_min << ", "
            << params.v_prog_max << "] V";
        throw Error(ErrorCategory::InvalidPulse, msg.str());
    }
    if (!(pulse.width > 0.0))
        throw Error(ErrorCategory::InvalidPulse, "pulse width must be positive");
}

double polarization_after_pulse(const DeviceParams& params, const WritePulse& pulse) {
    validate_pulse(params, pulse);
    if (pulse.amplitude == params.v_erase) return 0.0;
    return standard_normal_cdf((pulse.amplitude - params.coercive_mu) / params.coercive_sigma);
}

double vth_from_polarization(const DeviceParams& params, double polarization_fraction) {
    return params.vth_high - polarization_fraction * (params.vth_high - params.vth_low);
}

double vth_from_pulse(const DeviceParams& params, const WritePulse& pulse) {
    return vth_from_polarization(params, polarization_after_pulse(params, pulse));
}

FeFetState state_from_pulse(const DeviceParams& params, const WritePulse& pulse) {
    const double p = polarization_after_pulse(params, pulse);
    return {vth_from_polarization(params, p), p};
}

VthRange programmable_vth_range(const DeviceParams& params) {
    return {vth_from_pulse(params, {params.v_prog_max}), vth_from_pulse(params, {params.v_prog_min})};
}

WritePulse pulse_for_vth(const DeviceParams& params, double target_vth) {
    if (target_vth == params.vth_high) return {params.v_erase};

    const VthRange reach = programmable_vth_range(params);
    if (target_vth < params.vth_low || target_vth > params.vth_high ||
        target_vth < reach.lowest - kVthTolerance || target_vth > reach.highest + kVthTolerance) {
        std::ostringstream msg;
        msg << "target vth " << target_vth << " V is not programmable; reachable range is ["
            << reach.lowest << ", " << reach.highest << "] V plus " << params.vth_high
            << " V by erase";
        throw Error(ErrorCategory::OutOfRange, msg.str());
    }
    if (target_vth >= reach.highest) return {params.v_prog_min};
    if (target_vth <= reach.lowest) return {params.v_prog_max};

    // vth is decreasing in amplitude: vth(lo) > target > vth(hi).
    double lo = params.v_prog_min;
    double hi = params.v_prog_max;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (vth_from_pulse(params, {mid}) > target_vth)
            lo = mid;
        else
            hi = mid;
    }
    const double err_lo = std::abs(vth_from_pulse(params, {lo}) - target_vth);
    const double err_hi = std::abs(vth_from_pulse(params, {hi}) - target_vth);
    return {err_lo <= err_hi ? lo : hi};
}

double channel_current(const DeviceParams& params, double overdrive) {
    const double sub = params.i_off + (params.i_threshold - params.i_off) *
                                          std::pow(10.0, overdrive / params.subthreshold_slope);
    return std::min(sub, params.i_on);
}

double vds_factor(const DeviceParams& params, double v_ds) {
    return std::clamp(v_ds / params.v_dsat, 0.0, 1.0);
}

double drain_current(const DeviceParams& params, double v_gs, double v_ds, double vth) {
    return channel_current(params, v_gs - vth) * vds_factor(params, v_ds);
}

double apply_variation(const DeviceParams& params, double vth, double sigma_vth,
                       std::uint64_t seed) {
    if (!(sigma_vth >= 0.0)) invalid("sigma_vth must be non-negative");
    if (sigma_vth == 0.0) return vth;
    std::mt19937_64 rng(splitmix64(seed));
    std::normal_distribution<double> offset(0.0, sigma_vth);
    return std::clamp(vth + offset(rng), params.vth_low, params.vth_high);
}

}  // namespace fecam
