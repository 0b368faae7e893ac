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
#include "fecam/array.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fecam/error.hpp"

namespace fecam {

namespace {

constexpr std::size_t kLargeArray = 64;
constexpr long kMaxSubsteps = 100000;

void check_query(const FecamArray& arr, std::span<const double> query) {
    if (query.size() != arr.cols()) {
        std::ostringstream msg;
        msg << "query has " << query.size() << " values but the array has " << arr.cols()
            << " columns";
        throw Error(ErrorCategory::DimensionMismatch, msg.str());
    }
    for (std::size_t c = 0; c < query.size(); ++c) {
        if (!(query[c] >= 0.0 && query[c] <= arr.cfg().vdd)) {
            std::ostringstream msg;
            msg << "query value " << query[c] << " V at column " << c << " outside [0, "
                << arr.cfg().vdd << "] V";
            throw Error(ErrorCategory::OutOfRange, msg.str());
        }
    }
}

}  // namespace

void MatchLineParams::validate() const {
    auto fail = [](const std::string& what) {
        throw Error(ErrorCategory::InvalidParameter, "matchline: " + what);
    };
    if (!(c_pmos > 0.0 && c_drain > 0.0 && c_parasitic > 0.0))
        fail("capacitances must be positive");
    if (!(vdd > 0.0)) fail("vdd must be positive");
    if (!(delta_v_ml > 0.0 && delta_v_ml < vdd)) fail("delta_v_ml must lie in (0, vdd)");
    if (!(i_discharge_avg > 0.0)) fail("i_discharge_avg must be positive");
}

double ml_capacitance(const MatchLineParams& p, std::size_t n_cols) {
    return p.c_pmos + static_cast<double>(n_cols) * (p.c_drain + p.c_parasitic);
}

double discharge_time(const MatchLineParams& p, std::size_t n_cols) {
    if (n_cols == 0)
        throw Error(ErrorCategory::InvalidParameter, "discharge_time needs at least one column");
    return ml_capacitance(p, n_cols) * p.delta_v_ml /
           (static_cast<double>(n_cols) * p.i_discharge_avg);
}

double discharge_time_expanded(const MatchLineParams& p, std::size_t n_cols) {
    if (n_cols == 0)
        throw Error(ErrorCategory::InvalidParameter, "discharge_time needs at least one column");
    return p.delta_v_ml / p.i_discharge_avg *
           (p.c_pmos / static_cast<double>(n_cols) + p.c_drain + p.c_parasitic);
}

double discharge_time_limit(const MatchLineParams& p) {
    return p.delta_v_ml / p.i_discharge_avg * (p.c_drain + p.c_parasitic);
}

bool sense(double v_ml, const MatchLineParams& p) { return v_ml > p.vdd - p.delta_v_ml; }

FecamArray::FecamArray(std::size_t rows, std::size_t cols, CellConfig cfg, DeviceParams params,
                       MatchLineParams ml)
    : rows_(rows), cols_(cols), cfg_(std::move(cfg)), params_(params), ml_(ml) {
    if (rows_ == 0 || cols_ == 0)
        throw Error(ErrorCategory::InvalidParameter, "array needs at least one row and one column");
    cfg_.validate();
    params_.validate();
    ml_.validate();
    if (std::abs(cfg_.vdd - ml_.vdd) > 1e-12)
        throw Error(ErrorCategory::InconsistentInput, "cell and match-line vdd differ");
    cells_.assign(rows_ * cols_, program_digital(TernaryBit::DontCare, cfg_, params_));
}

void FecamArray::set_cell(std::size_t row, std::size_t col, const FecamCell& cell) {
    if (row >= rows_ || col >= cols_)
        throw Error(ErrorCategory::OutOfRange, "cell index outside the array");
    cells_[row * cols_ + col] = cell;
}

std::vector<std::string> FecamArray::warnings() const {
    std::vector<std::string> notes;
    if (rows_ > kLargeArray)
        notes.push_back("rows > 64: SL parasitics are no longer negligible; stronger SL drivers needed");
    if (cols_ > kLargeArray)
        notes.push_back("cols > 64: a strong precharge driver is needed for the match line");
    return notes;
}

std::vector<WritePlan> make_write_plans(const FecamArray& arr, std::size_t row,
                                        std::span<const CellTarget> targets,
                                        const WriteLimits& limits) {
    if (row >= arr.rows()) throw Error(ErrorCategory::OutOfRange, "write row outside the array");
    if (targets.size() != arr.cols()) {
        std::ostringstream msg;
        msg << "row write has " << targets.size() << " cell targets but the array has "
            << arr.cols() << " columns";
        throw Error(ErrorCategory::DimensionMismatch, msg.str());
    }
    const DeviceParams& params = arr.params();

    WritePlan erase{row, {}, {}, {}};
    WritePlan program{row, {}, {}, {}};
    for (WritePlan* plan : {&erase, &program}) {
        plan->sl_pulse.assign(arr.cols(), std::nullopt);
        plan->slb_pulse.assign(arr.cols(), std::nullopt);
    }
    erase.source_bias.assign(arr.rows(), -limits.inhibit_bias);
    program.source_bias.assign(arr.rows(), limits.inhibit_bias);

    bool any_erase = false, any_program = false;
    auto place = [&](double vth, std::optional<double>& erase_slot, std::optional<double>& program_slot) {
        const WritePulse pulse = pulse_for_vth(params, vth);
        if (pulse.amplitude < 0.0) {
            erase_slot = pulse.amplitude;
            any_erase = true;
        } else {
            program_slot = pulse.amplitude;
            any_program = true;
        }
    };
    for (std::size_t c = 0; c < arr.cols(); ++c) {
        place(targets[c].upper_vth, erase.sl_pulse[c], program.sl_pulse[c]);
        place(targets[c].lower_vth, erase.slb_pulse[c], program.slb_pulse[c]);
    }

    std::vector<WritePlan> plans;
    if (any_erase) plans.push_back(std::move(erase));
    if (any_program || !any_erase) plans.push_back(std::move(program));
    return plans;
}

std::pair<FecamArray, DisturbReport> write_row(const FecamArray& arr, const WritePlan& plan,
                                               const WriteLimits& limits) {
    if (plan.target_row >= arr.rows())
        throw Error(ErrorCategory::OutOfRange, "write row outside the array");
    if (plan.sl_pulse.size() != arr.cols() || plan.slb_pulse.size() != arr.cols() ||
        plan.source_bias.size() != arr.rows())
        throw Error(ErrorCategory::DimensionMismatch, "write plan does not match the array size");
    const DeviceParams& params = arr.params();
    for (std::size_t c = 0; c < arr.cols(); ++c) {
        for (const auto& line : {plan.sl_pulse[c], plan.slb_pulse[c]})
            if (line) validate_pulse(params, {*line, plan.pulse_width});
    }

    DisturbReport report;
    for (std::size_t r = 0; r < arr.rows(); ++r) {
        if (r == plan.target_row) continue;
        for (std::size_t c = 0; c < arr.cols(); ++c) {
            const double sl = plan.sl_pulse[c].value_or(0.0);
            const double slb = plan.slb_pulse[c].value_or(0.0);
            report.entries.push_back({r, c, false, sl - plan.source_bias[r]});
            report.entries.push_back({r, c, true, slb - plan.source_bias[r]});
        }
    }
    for (const DisturbEntry& e : report.entries)
        report.max_abs_v_gs = std::max(report.max_abs_v_gs, std::abs(e.v_gs));
    if (report.max_abs_v_gs > limits.disturb_limit + 1e-12) {
        std::ostringstream msg;
        msg << "unselected FeFET sees |v_gs| = " << report.max_abs_v_gs << " V, above the "
            << limits.disturb_limit << " V disturb limit";
        throw Error(ErrorCategory::DisturbViolation, msg.str());
    }

    FecamArray out = arr;
    for (std::size_t c = 0; c < arr.cols(); ++c) {
        FecamCell cell = arr.cell(plan.target_row, c);
        if (plan.sl_pulse[c])
            cell.upper_fet = state_from_pulse(params, {*plan.sl_pulse[c], plan.pulse_width});
        if (plan.slb_pulse[c])
            cell.lower_fet = state_from_pulse(params, {*plan.slb_pulse[c], plan.pulse_width});
        out.set_cell(plan.target_row, c, cell);
    }
    return {std::move(out), std::move(report)};
}

void program_row(FecamArray& arr, std::size_t row, std::span<const CellTarget> targets) {
    for (const WritePlan& plan : make_write_plans(arr, row, targets))
        arr = write_row(arr, plan).first;
    for (std::size_t c = 0; c < arr.cols(); ++c) {
        FecamCell cell = arr.cell(row, c);
        cell.mode = targets[c].mode;
        arr.set_cell(row, c, cell);
    }
}

double row_saturated_current(const FecamArray& arr, std::size_t row, std::span<const double> query,
                             const kernels::KernelTable& kernels) {
    const std::size_t cols = arr.cols();
    std::vector<double> gate(2 * cols);
    std::vector<double> vth(2 * cols);
    for (std::size_t c = 0; c < cols; ++c) {
        const FecamCell& cell = arr.cell(row, c);
        gate[2 * c] = query[c];
        vth[2 * c] = cell.upper_fet.vth;
        gate[2 * c + 1] = inverter(query[c], arr.cfg());
        vth[2 * c + 1] = cell.lower_fet.vth;
    }
    return kernels.sum_channel_currents(kernels::ChannelModel::from(arr.params()), gate, vth);
}

RowSearch search_row(const FecamArray& arr, std::size_t row, std::span<const double> query,
                     double t_sense, int steps, bool record_trace,
                     const kernels::KernelTable& kernels) {
    if (row >= arr.rows()) throw Error(ErrorCategory::OutOfRange, "search row outside the array");
    if (!(t_sense > 0.0)) throw Error(ErrorCategory::InvalidParameter, "t_sense must be positive");
    if (steps < 1) throw Error(ErrorCategory::InvalidParameter, "steps must be positive");
    check_query(arr, query);

    const MatchLineParams& ml = arr.ml_params();
    const double c_ml = ml_capacitance(ml, arr.cols());
    const double v_dsat = arr.params().v_dsat;
    // Every cell shares the ML as its drain, so the v_ds dependence is a
    // common factor of the summed current.
    const double i_sat = row_saturated_current(arr, row, query, kernels);
    auto dv_dt = [&](double v) { return -i_sat * std::clamp(v / v_dsat, 0.0, 1.0) / c_ml; };

    const double h = t_sense / steps;
    const double stiffness = i_sat / (c_ml * v_dsat);
    const long substeps =
        std::clamp(static_cast<long>(std::ceil(h * stiffness / 0.5)), 1L, kMaxSubsteps);
    const double hs = h / static_cast<double>(substeps);

    RowSearch out;
    double v = ml.vdd;
    if (record_trace) {
        out.trace.reserve(static_cast<std::size_t>(steps) + 1);
        out.trace.push_back({0.0, v});
    }
    for (int i = 0; i < steps; ++i) {
        for (long s = 0; s < substeps; ++s) {
            const double k1 = dv_dt(v);
            const double k2 = dv_dt(v + 0.5 * hs * k1);
            const double k3 = dv_dt(v + 0.5 * hs * k2);
            const double k4 = dv_dt(v + hs * k3);
            const double next = v + hs / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            v = std::clamp(next, 0.0, v);
        }
        if (record_trace) out.trace.push_back({h * (i + 1), v});
    }
    out.v_ml_final = v;
    out.match = sense(v, ml);
    return out;
}

double resolve_sense_time(const FecamArray& arr, std::optional<double> t_sense) {
    return t_sense ? *t_sense : discharge_time(arr.ml_params(), arr.cols());
}

SearchResult search(const FecamArray& arr, std::span<const double> query,
                    const SearchOptions& options) {
    check_query(arr, query);
    const kernels::KernelTable& k = options.kernels ? *options.kernels : kernels::active_kernels();
    SearchResult result;
    result.sense_time = resolve_sense_time(arr, options.t_sense);
    result.rows.reserve(arr.rows());
    for (std::size_t r = 0; r < arr.rows(); ++r)
        result.rows.push_back(
            search_row(arr, r, query, result.sense_time, options.steps, options.record_trace, k));
    return result;
}

BoundsSweep sweep_bounds(const FecamArray& arr, std::optional<double> t_sense, double step) {
    if (!(step > 0.0)) throw Error(ErrorCategory::InvalidParameter, "sweep step must be positive");
    const double t = resolve_sense_time(arr, t_sense);
    const double vdd = arr.cfg().vdd;
    const auto points = static_cast<std::size_t>(std::floor(vdd / step + 1e-9)) + 1;

    BoundsSweep sweep;
    sweep.v_sl.reserve(points);
    sweep.match.reserve(points);
    std::vector<double> query(arr.cols());
    for (std::size_t k = 0; k < points; ++k) {
        const double v = std::min(static_cast<double>(k) * step, vdd);
        std::fill(query.begin(), query.end(), v);
        std::vector<bool> row_match(arr.rows());
        for (std::size_t r = 0; r < arr.rows(); ++r)
            row_match[r] = search_row(arr, r, query, t, 1000, false).match;
        sweep.v_sl.push_back(v);
        sweep.match.push_back(std::move(row_match));
    }
    return sweep;
}

Bounds measure_bounds(const FecamArray& arr, std::size_t row, std::optional<double> t_sense,
                      double step) {
    if (row >= arr.rows()) throw Error(ErrorCategory::OutOfRange, "row outside the array");
    if (!(step > 0.0)) throw Error(ErrorCategory::InvalidParameter, "sweep step must be positive");
    const double t = resolve_sense_time(arr, t_sense);
    const double vdd = arr.cfg().vdd;
    const auto points = static_cast<std::size_t>(std::floor(vdd / step + 1e-9)) + 1;

    Bounds best;
    double best_len = -1.0;
    bool in_run = false;
    double run_start = 0.0;
    double last = 0.0;
    std::vector<double> query(arr.cols());
    auto close_run = [&] {
        if (in_run && last - run_start > best_len) {
            best_len = last - run_start;
            best = {run_start, last, false};
        }
        in_run = false;
    };
    for (std::size_t k = 0; k < points; ++k) {
        const double v = std::min(static_cast<double>(k) * step, vdd);
        std::fill(query.begin(), query.end(), v);
        if (search_row(arr, row, query, t, 1000, false).match) {
            if (!in_run) {
                in_run = true;
                run_start = v;
            }
            last = v;
        } else {
            close_run();
        }
    }
    close_run();
    return best;
}

}  // namespace fecam
