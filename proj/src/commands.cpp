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
#include "fecam/commands.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <random>
#include <sstream>

#include "fecam/array.hpp"
#include "fecam/costmodel.hpp"
#include "fecam/error.hpp"
#include "fecam/kernels/kernels.hpp"

namespace fecam {

namespace {

constexpr double kTransferMaxVgs = 1.2;

std::size_t to_count(double value, const std::string& axis) {
    if (!(value >= 1.0) || value != std::floor(value) || value > 1e6) {
        std::ostringstream msg;
        msg << axis << " sweep value " << value << " is not a positive integer";
        throw Error(ErrorCategory::InvalidParameter, msg.str());
    }
    return static_cast<std::size_t>(value);
}

FecamArray uniform_array(const GlobalConfig& cfg, std::size_t rows, std::size_t cols,
                         double lower, double upper) {
    FecamArray arr(rows, cols, cfg.cell, cfg.device, cfg.matchline);
    const std::vector<CellTarget> targets(cols, analog_target(lower, upper, cfg.cell, cfg.device));
    for (std::size_t r = 0; r < rows; ++r) program_row(arr, r, targets);
    return arr;
}

std::string bounds_line(std::size_t axis_value, const FecamArray& arr, std::optional<double> t_sense) {
    const Bounds b = measure_bounds(arr, 0, t_sense);
    std::ostringstream line;
    line << axis_value << ',' << (b.empty ? "nan" : format_number(b.lower)) << ','
         << (b.empty ? "nan" : format_number(b.upper)) << ','
         << format_number(resolve_sense_time(arr, t_sense)) << '\n';
    return line.str();
}

}  // namespace

std::string cmd_transfer(const GlobalConfig& cfg, std::span<const double> amplitudes,
                         double v_gs_step) {
    if (!(v_gs_step > 0.0)) throw Error(ErrorCategory::InvalidParameter, "v_gs step must be positive");
    const auto points = static_cast<int>(std::floor(kTransferMaxVgs / v_gs_step + 1e-9)) + 1;
    std::ostringstream out;
    out << "amplitude_volts,v_gs_volts,i_d_amps\n";
    for (double amplitude : amplitudes) {
        const double vth = vth_from_pulse(cfg.device, {amplitude});
        for (int k = 0; k < points; ++k) {
            const double v_gs = k * v_gs_step;
            out << format_number(amplitude) << ',' << format_number(v_gs) << ','
                << format_number(drain_current(cfg.device, v_gs, cfg.cell.vdd, vth)) << '\n';
        }
    }
    return out.str();
}

SearchRun cmd_search(const GlobalConfig& cfg, const ArrayDescription& array,
                     const std::vector<std::vector<double>>& queries,
                     std::optional<double> t_sense) {
    const FecamArray arr = array.build(cfg);
    SearchRun run;
    run.warnings = arr.warnings();
    std::ostringstream summary;
    summary << "query,row,match,v_ml_final_volts,sense_time_seconds\n";
    for (std::size_t q = 0; q < queries.size(); ++q) {
        if (queries[q].size() != arr.cols()) {
            std::ostringstream msg;
            msg << "query " << q << " has " << queries[q].size() << " values but the array has "
                << arr.cols() << " columns";
            throw Error(ErrorCategory::DimensionMismatch, msg.str());
        }
        SearchOptions options;
        options.t_sense = t_sense;
        const SearchResult result = search(arr, queries[q], options);
        std::ostringstream trace;
        trace << "row,t_seconds,v_ml_volts\n";
        for (std::size_t r = 0; r < result.rows.size(); ++r) {
            const RowSearch& row = result.rows[r];
            summary << q << ',' << r << ',' << (row.match ? 1 : 0) << ','
                    << format_number(row.v_ml_final) << ',' << format_number(result.sense_time) << '\n';
            for (const TracePoint& p : row.trace)
                trace << r << ',' << format_number(p.t) << ',' << format_number(p.v_ml) << '\n';
        }
        run.trace_csv.push_back(trace.str());
    }
    run.summary_csv = summary.str();
    return run;
}

std::string cmd_sweep(const GlobalConfig& cfg, const SweepSpec& spec) {
    if (spec.axis != "rows" && spec.axis != "cols" && spec.axis != "v_sl")
        throw Error(ErrorCategory::InvalidParameter,
                    "unknown sweep axis '" + spec.axis + "'; supported axes: rows, cols, v_sl");

    std::ostringstream out;
    if (spec.axis == "v_sl") {
        const FecamArray arr = uniform_array(cfg, spec.rows, spec.cols, spec.lower, spec.upper);
        const BoundsSweep sweep = sweep_bounds(arr, spec.t_sense, spec.step);
        out << "v_sl_volts";
        for (std::size_t r = 0; r < arr.rows(); ++r) out << ",match_" << r;
        out << '\n';
        for (std::size_t k = 0; k < sweep.v_sl.size(); ++k) {
            out << format_number(sweep.v_sl[k]);
            for (bool m : sweep.match[k]) out << ',' << (m ? 1 : 0);
            out << '\n';
        }
        return out.str();
    }

    // Axis points are independent; rows come back in axis order.
    std::vector<std::future<std::string>> lines;
    for (double value : spec.values) {
        const std::size_t n = to_count(value, spec.axis);
        const std::size_t rows = spec.axis == "rows" ? n : spec.rows;
        const std::size_t cols = spec.axis == "cols" ? n : spec.cols;
        lines.push_back(std::async(std::launch::async, [&cfg, &spec, rows, cols, n] {
            return bounds_line(n, uniform_array(cfg, rows, cols, spec.lower, spec.upper), spec.t_sense);
        }));
    }
    out << spec.axis << ",lower_bound_volts,upper_bound_volts,sense_time_seconds\n";
    for (auto& line : lines) out << line.get();
    return out.str();
}

RouteRun cmd_route(const GlobalConfig& cfg, const std::vector<RangeRule>& rules,
                   const RouteOptions& options) {
    RouteRun run;
    std::optional<RoutingTable> ternary, analog;
    if (options.ternary) {
        ternary = compile_table(rules, TableMode::Ternary);
        run.ternary_table = ternary->export_text();
    }
    if (options.analog) {
        analog = compile_table(rules, TableMode::Analog3b);
        run.analog_table = analog->export_text();
    }

    std::ostringstream report;
    if (ternary) {
        report << "ternary_entries=" << ternary->entry_count() << '\n'
               << "ternary_cells=" << ternary->cell_count() << '\n'
               << "cmos_energy_joules="
               << format_number(search_energy(cfg.cost, CamMode::CmosTcam, ternary->cell_count())) << '\n';
    }
    if (analog) {
        report << "analog_entries=" << analog->entry_count() << '\n'
               << "analog_cells=" << analog->cell_count() << '\n'
               << "analog_energy_joules="
               << format_number(search_energy(cfg.cost, CamMode::FecamAnalog, analog->cell_count())) << '\n';
    }
    if (ternary && analog) {
        const ComparisonReport cmp = routing_report(cfg.cost, *ternary, *analog);
        report.str("");
        report << cmp.to_key_value();
        run.report_csv = ComparisonReport::csv_header() + "\n" + cmp.to_csv_row() + "\n";
    }
    run.report = report.str();

    if (options.verify) {
        std::ostringstream verify;
        const int width = rules.empty() ? 0 : rules.front().width;
        const std::uint64_t space = width > 0 ? std::uint64_t{1} << width : 0;
        const bool exhaustive = space <= options.verify_samples;
        const std::uint64_t count = exhaustive ? space : options.verify_samples;
        std::mt19937_64 rng(cfg.rng_seed);
        std::uniform_int_distribution<std::uint64_t> pick(0, space ? space - 1 : 0);

        std::uint64_t ternary_fail = 0, analog_fail = 0;
        for (std::uint64_t i = 0; i < count; ++i) {
            const std::uint64_t addr = exhaustive ? i : pick(rng);
            std::optional<std::string> expected;
            for (const RangeRule& rule : rules) {
                if (rule.lo <= addr && addr <= rule.hi) {
                    expected = rule.action;
                    break;
                }
            }
            if (ternary && lookup(*ternary, addr) != expected) ++ternary_fail;
            if (analog && lookup(*analog, addr) != expected) ++analog_fail;
        }
        const char* how = exhaustive ? "exhaustive" : "sampled";
        if (ternary)
            verify << "verify ternary: " << (ternary_fail == 0 ? "pass" : "fail") << " (" << count
                   << " " << how << " addresses, " << ternary_fail << " mismatches)\n";
        if (analog)
            verify << "verify analog: " << (analog_fail == 0 ? "pass" : "fail") << " (" << count
                   << " " << how << " addresses, " << analog_fail << " mismatches)\n";
        run.verify_text = verify.str();
        run.verify_passed = ternary_fail == 0 && analog_fail == 0;
    }
    return run;
}

std::string cmd_bench(const GlobalConfig& cfg, std::size_t iterations) {
    using clock = std::chrono::steady_clock;
    if (iterations == 0) throw Error(ErrorCategory::InvalidParameter, "iterations must be positive");

    std::mt19937_64 rng(cfg.rng_seed);
    std::uniform_real_distribution<double> volts(0.0, cfg.cell.vdd);
    std::vector<double> gate(128), vth(128);
    for (std::size_t i = 0; i < gate.size(); ++i) {
        gate[i] = volts(rng);
        vth[i] = volts(rng);
    }
    const auto model = kernels::ChannelModel::from(cfg.device);

    const std::size_t n_entries = 64, n_digits = 8;
    std::vector<std::uint32_t> value(n_entries), care(n_entries);
    std::vector<std::int32_t> lo(n_entries * n_digits), hi(n_entries * n_digits);
    for (std::size_t e = 0; e < n_entries; ++e) {
        value[e] = static_cast<std::uint32_t>(rng()) | 1u;
        care[e] = 0xffffffffu;
        for (std::size_t d = 0; d < n_digits; ++d) {
            lo[d * n_entries + e] = 1;
            hi[d * n_entries + e] = d == 0 ? 1 : 7;
        }
    }
    const std::vector<std::int32_t> key(n_digits, 0);  // misses every entry

    std::ostringstream out;
    out << "kernel,isa,ns_per_call\n";
    for (kernels::Isa isa : kernels::available_isas()) {
        const kernels::KernelTable& k = *kernels::kernels_for(isa);
        auto time = [&](const char* name, auto&& body) {
            volatile double sink = 0.0;
            const auto start = clock::now();
            for (std::size_t i = 0; i < iterations; ++i) sink = sink + body();
            const double ns = std::chrono::duration<double, std::nano>(clock::now() - start).count();
            out << name << ',' << kernels::isa_name(isa) << ',' << format_number(ns / iterations) << '\n';
        };
        time("sum_channel_currents_128", [&] { return k.sum_channel_currents(model, gate, vth); });
        time("first_ternary_match_64", [&] {
            return static_cast<double>(k.first_ternary_match(value, care, 0u));
        });
        time("first_digit_range_match_64x8", [&] {
            return static_cast<double>(k.first_digit_range_match(lo, hi, n_entries, key));
        });
    }
    return out.str();
}

}  // namespace fecam
