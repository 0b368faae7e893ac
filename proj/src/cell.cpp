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
#include "fecam/cell.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fecam/error.hpp"

namespace fecam {

namespace {

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void require_programmable(double vth, const char* which, const DeviceParams& params) {
    if (vth == params.vth_high) return;
    const VthRange reach = programmable_vth_range(params);
    if (vth < reach.lowest - 1e-3 || vth > reach.highest + 1e-3) {
        std::ostringstream msg;
        msg << which << " bound needs vth = " << vth << " V, outside the programmable range ["
            << reach.lowest << ", " << reach.highest << "] V";
        throw Error(ErrorCategory::OutOfRange, msg.str());
    }
}

}  // namespace

std::vector<double> CellConfig::default_level_bounds() {
    std::vector<double> bounds(9);
    for (int k = 0; k <= 8; ++k) bounds[k] = 0.1 + 0.1 * k;
    return bounds;
}

void CellConfig::validate() const {
    auto fail = [](const std::string& what) {
        throw Error(ErrorCategory::InvalidParameter, "cell: " + what);
    };
    if (!(vdd > 0.0)) fail("vdd must be positive");
    if (level_count < 1) fail("level_count must be at least 1");
    if (level_bounds.size() != static_cast<std::size_t>(level_count) + 1)
        fail("level_bounds must hold level_count + 1 fence-posts");
    for (std::size_t k = 0; k < level_bounds.size(); ++k) {
        if (level_bounds[k] < 0.0 || level_bounds[k] > vdd) fail("level_bounds must lie in [0, vdd]");
        if (k > 0 && !(level_bounds[k] > level_bounds[k - 1]))
            fail("level_bounds must be strictly increasing");
    }
    if (!(digital_zero_upper > 0.0 && digital_zero_upper < vdd))
        fail("digital_zero_upper must lie in (0, vdd)");
    if (!(digital_one_lower > 0.0 && digital_one_lower < vdd))
        fail("digital_one_lower must lie in (0, vdd)");
    if (!(inverter_width >= 0.0)) fail("inverter_width must be non-negative");
}

double inverter(double v_sl, const CellConfig& cfg) {
    if (cfg.inverter_width == 0.0) return cfg.vdd - v_sl;
    const double half = 0.5 * cfg.vdd / cfg.inverter_width;
    const double low = logistic(-half);
    const double high = logistic(half);
    const double s = logistic((0.5 * cfg.vdd - v_sl) / cfg.inverter_width);
    return cfg.vdd * (s - low) / (high - low);
}

CellTarget analog_target(double lower, double upper, const CellConfig& cfg,
                         const DeviceParams& params) {
    if (!(lower < upper)) {
        std::ostringstream msg;
        msg << "empty match window [" << lower << ", " << upper << "] V";
        throw Error(ErrorCategory::EmptyWindow, msg.str());
    }
    if (lower < 0.0 || upper > cfg.vdd) {
        std::ostringstream msg;
        msg << "match window [" << lower << ", " << upper << "] V exceeds [0, " << cfg.vdd << "] V";
        throw Error(ErrorCategory::OutOfRange, msg.str());
    }
    // An edge on a rail is held open by erasing that FeFET, so the rail itself matches.
    CellTarget target{upper, cfg.vdd - lower, CellMode::Analog};
    if (upper >= cfg.vdd && params.vth_high >= cfg.vdd) target.upper_vth = params.vth_high;
    if (lower <= 0.0 && params.vth_high >= cfg.vdd) target.lower_vth = params.vth_high;
    require_programmable(target.upper_vth, "upper", params);
    require_programmable(target.lower_vth, "lower", params);
    return target;
}

CellTarget digital_target(TernaryBit bit, const CellConfig& cfg, const DeviceParams& params) {
    CellTarget target;
    switch (bit) {
        case TernaryBit::One: target = analog_target(cfg.digital_one_lower, cfg.vdd, cfg, params); break;
        case TernaryBit::Zero: target = analog_target(0.0, cfg.digital_zero_upper, cfg, params); break;
        case TernaryBit::DontCare: target = analog_target(0.0, cfg.vdd, cfg, params); break;
    }
    target.mode = CellMode::Digital;
    return target;
}

CellTarget level_target(int level, const CellConfig& cfg, const DeviceParams& params) {
    if (level < 0 || level >= cfg.level_count) {
        std::ostringstream msg;
        msg << "level " << level << " outside [0, " << cfg.level_count - 1 << "]";
        throw Error(ErrorCategory::OutOfRange, msg.str());
    }
    return analog_target(cfg.level_bounds[level], cfg.level_bounds[level + 1], cfg, params);
}

FecamCell program_cell(const CellTarget& target, const DeviceParams& params) {
    FecamCell cell;
    cell.upper_fet = state_from_pulse(params, pulse_for_vth(params, target.upper_vth));
    cell.lower_fet = state_from_pulse(params, pulse_for_vth(params, target.lower_vth));
    cell.mode = target.mode;
    return cell;
}

FecamCell program_analog(double lower, double upper, const CellConfig& cfg,
                         const DeviceParams& params) {
    return program_cell(analog_target(lower, upper, cfg, params), params);
}

FecamCell program_digital(TernaryBit bit, const CellConfig& cfg, const DeviceParams& params) {
    return program_cell(digital_target(bit, cfg, params), params);
}

FecamCell program_level(int level, const CellConfig& cfg, const DeviceParams& params) {
    return program_cell(level_target(level, cfg, params), params);
}

double digital_query_voltage(bool bit, const CellConfig& cfg) { return bit ? cfg.vdd : 0.0; }

double cell_current(const FecamCell& cell, double v_sl, double v_ml, const CellConfig& cfg,
                    const DeviceParams& params) {
    return drain_current(params, v_sl, v_ml, cell.upper_fet.vth) +
           drain_current(params, inverter(v_sl, cfg), v_ml, cell.lower_fet.vth);
}

bool cell_matches(const FecamCell& cell, double v_sl, const CellConfig& cfg,
                  const DeviceParams& params) {
    return cell_current(cell, v_sl, cfg.vdd, cfg, params) < params.i_threshold;
}

MatchWindow match_window(const FecamCell& cell, const CellConfig& cfg, const DeviceParams& params,
                         double tolerance) {
    auto matches = [&](double v) { return cell_matches(cell, v, cfg, params); };

    double inside = std::clamp(0.5 * (cell.window_lower(cfg) + cell.window_upper()), 0.0, cfg.vdd);
    if (!matches(inside)) {
        bool found = false;
        const int steps = static_cast<int>(std::lround(cfg.vdd / 1e-3));
        for (int k = 0; k <= steps && !found; ++k) {
            const double v = cfg.vdd * k / steps;
            if (matches(v)) {
                inside = v;
                found = true;
            }
        }
        if (!found) return {cell.window_lower(cfg), cell.window_upper(), true};
    }

    MatchWindow window;
    if (matches(0.0)) {
        window.lower = 0.0;
    } else {
        double miss = 0.0, hit = inside;
        while (hit - miss > tolerance) {
            const double mid = 0.5 * (miss + hit);
            (matches(mid) ? hit : miss) = mid;
        }
        window.lower = hit;
    }
    if (matches(cfg.vdd)) {
        window.upper = cfg.vdd;
    } else {
        double hit = inside, miss = cfg.vdd;
        while (miss - hit > tolerance) {
            const double mid = 0.5 * (miss + hit);
            (matches(mid) ? hit : miss) = mid;
        }
        window.upper = hit;
    }
    return window;
}

std::vector<MatchWindow> quantized_levels(const CellConfig& cfg) {
    std::vector<MatchWindow> windows;
    windows.reserve(cfg.level_count);
    for (int k = 0; k < cfg.level_count; ++k)
        windows.push_back({cfg.level_bounds[k], cfg.level_bounds[k + 1], false});
    return windows;
}

int supported_level_count(const CellConfig& cfg, const DeviceParams& params, double sigma_vth,
                          int trials, std::uint64_t seed, double max_error_rate) {
    if (!(sigma_vth >= 0.0))
        throw Error(ErrorCategory::InvalidParameter, "sigma_vth must be non-negative");
    if (trials < 1) throw Error(ErrorCategory::InvalidParameter, "trials must be positive");

    const double first = cfg.level_bounds.front();
    const double span = cfg.level_bounds.back() - first;
    for (int levels = cfg.level_count; levels >= 1; --levels) {
        const double step = span / levels;
        std::uint64_t stream = seed * 0x100000001b3ULL + static_cast<std::uint64_t>(levels) * 0x9e3779b9ULL;
        long errors = 0;
        for (int k = 0; k < levels; ++k) {
            const double lo = first + step * k;
            const double hi = lo + step;
            const double center = lo + 0.5 * step;
            for (int t = 0; t < trials; ++t) {
                FecamCell cell;
                cell.upper_fet.vth = apply_variation(params, hi, sigma_vth, stream++);
                cell.lower_fet.vth = apply_variation(params, cfg.vdd - lo, sigma_vth, stream++);
                bool misread = !cell_matches(cell, center, cfg, params);
                if (k > 0) misread = misread || cell_matches(cell, center - step, cfg, params);
                if (k + 1 < levels) misread = misread || cell_matches(cell, center + step, cfg, params);
                errors += misread ? 1 : 0;
            }
        }
        const double rate = static_cast<double>(errors) / (static_cast<double>(levels) * trials);
        if (rate <= max_error_rate) return levels;
    }
    return 0;
}

}  // namespace fecam
