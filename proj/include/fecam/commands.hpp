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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fecam/config.hpp"
#include "fecam/encoder.hpp"
#include "fecam/io.hpp"

namespace fecam {

/// CSV `amplitude_volts,v_gs_volts,i_d_amps`: one I_D-V_G curve over
/// [0, 1.2] V per programming amplitude, at v_ds = vdd.
std::string cmd_transfer(const GlobalConfig& cfg, std::span<const double> amplitudes,
                         double v_gs_step = 0.01);

struct SearchRun {
    /// `query,row,match,v_ml_final_volts,sense_time_seconds`
    std::string summary_csv;
    /// One `row,t_seconds,v_ml_volts` document per query.
    std::vector<std::string> trace_csv;
    std::vector<std::string> warnings;
};

SearchRun cmd_search(const GlobalConfig& cfg, const ArrayDescription& array,
                     const std::vector<std::vector<double>>& queries,
                     std::optional<double> t_sense);

struct SweepSpec {
    std::string axis;             // rows | cols | v_sl
    std::vector<double> values;   // rows/cols counts; unused for v_sl
    double lower = 0.4;           // programmed window
    double upper = 0.6;
    std::size_t rows = 1;         // fixed dimensions for the other axis
    std::size_t cols = 1;
    std::optional<double> t_sense;
    double step = 1e-3;           // v_sl sweep resolution
};

/// rows/cols: `<axis>,lower_bound_volts,upper_bound_volts,sense_time_seconds`.
/// v_sl: `v_sl_volts,match_0,...,match_{R-1}`.
std::string cmd_sweep(const GlobalConfig& cfg, const SweepSpec& spec);

struct RouteOptions {
    bool ternary = true;
    bool analog = true;
    bool verify = false;
    std::size_t verify_samples = 1000000;
};

struct RouteRun {
    std::string ternary_table;
    std::string analog_table;
    std::string report;        // key=value lines
    std::string report_csv;    // header + one row, both modes only
    std::string verify_text;
    bool verify_passed = true;
};

RouteRun cmd_route(const GlobalConfig& cfg, const std::vector<RangeRule>& rules,
                   const RouteOptions& options);

/// CSV `kernel,isa,ns_per_call` for every ISA available on this machine.
std::string cmd_bench(const GlobalConfig& cfg, std::size_t iterations);

}  // namespace fecam
