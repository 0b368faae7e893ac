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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fecam/device_model.hpp"

namespace fecam {

enum class CellMode { Analog, Digital };

enum class TernaryBit : std::uint8_t { Zero, One, DontCare };

/// Supply, SL inverter and discrete bound grid shared by every cell.
struct CellConfig {
    double vdd = 1.0;
    int level_count = 8;
    /// Fence-posts b_0 < ... < b_L partitioning the analog search range.
    std::vector<double> level_bounds = default_level_bounds();
    /// Digital windows: One = [digital_one_lower, vdd], Zero = [0, digital_zero_upper].
    double digital_one_lower = 0.7;
    double digital_zero_upper = 0.3;
    /// 0 selects the ideal complement vdd - v_sl; otherwise a logistic
    /// transfer curve with this transition width (V), pinned at both rails.
    double inverter_width = 0.0;

    static std::vector<double> default_level_bounds();

    void validate() const;

    bool operator==(const CellConfig&) const = default;
};

/// Two FeFETs: the upper one is gated by SL and sets the upper bound, the
/// lower one is gated by the inverted SL and sets the lower bound.
struct FecamCell {
    FeFetState upper_fet;
    FeFetState lower_fet;
    CellMode mode = CellMode::Analog;

    double window_upper() const { return upper_fet.vth; }
    double window_lower(const CellConfig& cfg) const { return cfg.vdd - lower_fet.vth; }

    bool operator==(const FecamCell&) const = default;
};

/// Target V_TH pair for a cell, before write pulses are derived.
struct CellTarget {
    double upper_vth;
    double lower_vth;
    CellMode mode = CellMode::Analog;
};

struct MatchWindow {
    double lower = 0.0;
    double upper = 0.0;
    bool empty = false;
};

double inverter(double v_sl, const CellConfig& cfg);

CellTarget analog_target(double lower, double upper, const CellConfig& cfg,
                         const DeviceParams& params);
CellTarget digital_target(TernaryBit bit, const CellConfig& cfg, const DeviceParams& params);
CellTarget level_target(int level, const CellConfig& cfg, const DeviceParams& params);

/// Realizes a target through the device model (pulse_for_vth + state_from_pulse).
FecamCell program_cell(const CellTarget& target, const DeviceParams& params);

FecamCell program_analog(double lower, double upper, const CellConfig& cfg,
                         const DeviceParams& params);
FecamCell program_digital(TernaryBit bit, const CellConfig& cfg, const DeviceParams& params);
/// Programs the k-th fence-post window [b_k, b_{k+1}].
FecamCell program_level(int level, const CellConfig& cfg, const DeviceParams& params);

/// Search voltage for a digital query bit: vdd for 1, 0 for 0.
double digital_query_voltage(bool bit, const CellConfig& cfg);

/// Total current drawn from the match line by one cell.
double cell_current(const FecamCell& cell, double v_sl, double v_ml, const CellConfig& cfg,
                    const DeviceParams& params);

/// Cell-level match criterion: cell_current(v_sl, vdd) < i_threshold.
bool cell_matches(const FecamCell& cell, double v_sl, const CellConfig& cfg,
                  const DeviceParams& params);

/// Maximal interval of v_sl within [0, vdd] satisfying cell_matches, with
/// edges refined by bisection to `tolerance`.
MatchWindow match_window(const FecamCell& cell, const CellConfig& cfg, const DeviceParams& params,
                         double tolerance = 1e-6);

/// The L adjacent windows [b_k, b_{k+1}) of the fence-post grid.
std::vector<MatchWindow> quantized_levels(const CellConfig& cfg);

/// Largest level count L <= cfg.level_count such that, with L equal windows
/// spanning [b_0, b_L] and both FeFETs perturbed by N(0, sigma_vth), the
/// fraction of misread trials (level center mismatching, or a neighbouring
/// level center matching) stays at or below max_error_rate. 0 if none.
int supported_level_count(const CellConfig& cfg, const DeviceParams& params, double sigma_vth,
                          int trials, std::uint64_t seed, double max_error_rate = 0.01);

}  // namespace fecam
