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
#include <utility>
#include <vector>

#include "fecam/cell.hpp"
#include "fecam/device_model.hpp"
#include "fecam/kernels/kernels.hpp"

namespace fecam {

/// Match-line electrical parameters.
struct MatchLineParams {
    double c_pmos = 0.10e-15;        // F, precharge pMOS drain
    double c_drain = 0.35e-15;       // F, per cell
    double c_parasitic = 0.05e-15;   // F, per cell interconnect
    double delta_v_ml = 0.5;         // V, sense boundary below vdd
    double i_discharge_avg = 25e-9;  // A, average boundary discharge current per cell
    double vdd = 1.0;                // V

    void validate() const;

    bool operator==(const MatchLineParams&) const = default;
};

/// C_ML = c_pmos + n_cols * (c_drain + c_parasitic)
double ml_capacitance(const MatchLineParams& p, std::size_t n_cols);

/// Time for n_cols cells drawing the average boundary current to pull the
/// ML down by delta_v_ml. Used as the Auto sense time.
double discharge_time(const MatchLineParams& p, std::size_t n_cols);

/// The same quantity written as (dV/I) * (c_pmos / N + c_drain + c_parasitic).
double discharge_time_expanded(const MatchLineParams& p, std::size_t n_cols);

/// Limit of discharge_time as the column count grows without bound.
double discharge_time_limit(const MatchLineParams& p);

/// Sense amplifier abstraction: strict comparison against vdd - delta_v_ml.
bool sense(double v_ml, const MatchLineParams& p);

class FecamArray {
public:
    /// All cells start as digital don't-care.
    FecamArray(std::size_t rows, std::size_t cols, CellConfig cfg = {}, DeviceParams params = {},
               MatchLineParams ml = {});

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const CellConfig& cfg() const { return cfg_; }
    const DeviceParams& params() const { return params_; }
    const MatchLineParams& ml_params() const { return ml_; }

    const FecamCell& cell(std::size_t row, std::size_t col) const { return cells_[row * cols_ + col]; }
    void set_cell(std::size_t row, std::size_t col, const FecamCell& cell);

    /// Non-fatal notes, e.g. sizes beyond which driver strength matters.
    std::vector<std::string> warnings() const;

    bool operator==(const FecamArray&) const = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    CellConfig cfg_;
    DeviceParams params_;
    MatchLineParams ml_;
    std::vector<FecamCell> cells_;
};

/// Bias levels of the V_w/2 inhibition write scheme.
struct WriteLimits {
    double inhibit_bias = 2.0;  // V, |source bias| on unselected rows
    double disturb_limit = 2.0; // V, max |v_gs| tolerated by an unselected FeFET
};

/// One row write. Column lines without a pulse are held at 0 V.
struct WritePlan {
    std::size_t target_row = 0;
    std::vector<std::optional<double>> sl_pulse;   // gate of the upper FeFETs
    std::vector<std::optional<double>> slb_pulse;  // gate of the lower FeFETs
    std::vector<double> source_bias;               // per row; ignored for target_row (grounded)
    double pulse_width = 1e-6;
};

struct DisturbEntry {
    std::size_t row;
    std::size_t col;
    bool inverted_line;  // true for the lower FeFET (gate on the inverted SL)
    double v_gs;
};

struct DisturbReport {
    std::vector<DisturbEntry> entries;
    double max_abs_v_gs = 0.0;
};

/// Pulses realizing `targets` in `row`. Erase and program pulses need
/// opposite inhibit polarity, so a row mixing both yields two plans
/// (erase first); otherwise a single plan.
std::vector<WritePlan> make_write_plans(const FecamArray& arr, std::size_t row,
                                        std::span<const CellTarget> targets,
                                        const WriteLimits& limits = {});

/// Applies a plan. Throws DisturbViolation if any unselected FeFET sees
/// |v_gs| above the limit; the input array is never modified.
std::pair<FecamArray, DisturbReport> write_row(const FecamArray& arr, const WritePlan& plan,
                                               const WriteLimits& limits = {});

/// make_write_plans + write_row, in place.
void program_row(FecamArray& arr, std::size_t row, std::span<const CellTarget> targets);

struct TracePoint {
    double t;     // s
    double v_ml;  // V
};

struct RowSearch {
    bool match = false;
    double v_ml_final = 0.0;
    std::vector<TracePoint> trace;
};

struct SearchResult {
    std::vector<RowSearch> rows;
    double sense_time = 0.0;
};

struct SearchOptions {
    std::optional<double> t_sense;  // nullopt = Auto, discharge_time(cols)
    int steps = 1000;
    bool record_trace = true;
    const kernels::KernelTable* kernels = nullptr;  // nullptr = active_kernels()
};

/// Sum of saturated cell currents on one row for the given query; the
/// current at ML voltage V is this value times vds_factor(V).
double row_saturated_current(const FecamArray& arr, std::size_t row, std::span<const double> query,
                             const kernels::KernelTable& kernels = kernels::active_kernels());

/// Precharge to vdd, then integrate C_ML dV/dt = -sum_i I_i(V) with fixed-step RK4.
RowSearch search_row(const FecamArray& arr, std::size_t row, std::span<const double> query,
                     double t_sense, int steps = 1000, bool record_trace = true,
                     const kernels::KernelTable& kernels = kernels::active_kernels());

SearchResult search(const FecamArray& arr, std::span<const double> query,
                    const SearchOptions& options = {});

double resolve_sense_time(const FecamArray& arr, std::optional<double> t_sense);

struct Bounds {
    double lower = 0.0;
    double upper = 0.0;
    bool empty = true;
};

/// Common v_sl on every column swept over [0, vdd]; per sweep point the match flag of each row.
struct BoundsSweep {
    std::vector<double> v_sl;
    std::vector<std::vector<bool>> match;  // [point][row]
};

BoundsSweep sweep_bounds(const FecamArray& arr, std::optional<double> t_sense, double step = 1e-3);

/// Edges of the longest contiguous matching run of `row` in a bounds sweep.
Bounds measure_bounds(const FecamArray& arr, std::size_t row, std::optional<double> t_sense,
                      double step = 1e-3);

}  // namespace fecam
