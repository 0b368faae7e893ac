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
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fecam/commands.hpp"
#include "fecam/config.hpp"
#include "fecam/error.hpp"
#include "fecam/io.hpp"

namespace {

using fecam::Error;
using fecam::ErrorCategory;

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCategory::Io, "cannot open " + path);
    return in;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCategory::Io, "cannot write " + path);
    out << text;
}

std::vector<double> amplitude_grid(double start, double stop, double step) {
    std::vector<double> grid;
    const auto n = static_cast<int>(std::floor((stop - start) / step + 1e-9));
    for (int k = 0; k <= n; ++k) grid.push_back(start + k * step);
    return grid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FeFET content-addressable memory simulator and range encoder"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    app.add_option("-c,--config", config_path, "INI config file (default: $FECAM_CONFIG)");
    app.add_option("--set", overrides, "Override a config field, section.key=value");

    // transfer
    auto* transfer = app.add_subcommand("transfer", "I_D-V_G curves for programming amplitudes");
    std::vector<double> amplitudes;
    bool amplitude_sweep = false;
    double vgs_step = 0.01;
    std::string transfer_out;
    transfer->add_option("-a,--amplitudes", amplitudes, "Programming amplitudes in volts")->delimiter(',');
    transfer->add_flag("--grid", amplitude_sweep, "Use the 2 V to 4 V grid in 50 mV steps");
    transfer->add_option("--vgs-step", vgs_step, "Gate sweep step in volts");
    transfer->add_option("-o,--output", transfer_out, "Output CSV (default stdout)");

    // search
    auto* search = app.add_subcommand("search", "Transient match-line search on an array file");
    std::string array_path, query_path, trace_dir, search_out;
    std::optional<double> t_sense;
    search->add_option("--array", array_path, "Array description file")->required();
    search->add_option("--queries", query_path, "Query file, one query per line")->required();
    search->add_option("--t-sense", t_sense, "Sense time in seconds (default: column-adapted)");
    search->add_option("--trace-dir", trace_dir, "Write trace_q<k>.csv per query into this directory");
    search->add_option("-o,--output", search_out, "Summary CSV (default stdout)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Matching-bound sweeps over rows, columns or v_sl");
    fecam::SweepSpec sweep_spec;
    std::string sweep_out;
    sweep->add_option("--axis", sweep_spec.axis, "rows | cols | v_sl")->required();
    sweep->add_option("--values", sweep_spec.values, "Axis values")->delimiter(',');
    sweep->add_option("--lower", sweep_spec.lower, "Programmed lower bound (V)");
    sweep->add_option("--upper", sweep_spec.upper, "Programmed upper bound (V)");
    sweep->add_option("--rows", sweep_spec.rows, "Rows when not swept");
    sweep->add_option("--cols", sweep_spec.cols, "Columns when not swept");
    sweep->add_option("--t-sense", sweep_spec.t_sense, "Fixed sense time (default: column-adapted)");
    sweep->add_option("--step", sweep_spec.step, "v_sl resolution for the v_sl axis (V)");
    sweep->add_option("-o,--output", sweep_out, "Output CSV (default stdout)");

    // route
    auto* route = app.add_subcommand("route", "Compile range rules into TCAM and analog CAM tables");
    std::string rules_path, mode = "both", table_prefix, report_csv;
    fecam::RouteOptions route_options;
    route->add_option("--rules", rules_path, "Rule file, one 'lo hi width action' per line")->required();
    route->add_option("--mode", mode, "ternary | analog | both")
        ->check(CLI::IsMember({"ternary", "analog", "both"}));
    route->add_flag("--verify", route_options.verify, "Check lookups against interval containment");
    route->add_option("--samples", route_options.verify_samples, "Addresses sampled by --verify");
    route->add_option("--table-prefix", table_prefix,
                      "Write <prefix>.ternary.txt / <prefix>.analog.txt instead of printing tables");
    route->add_option("--report-csv", report_csv, "Also write the comparison as CSV");

    // bench
    auto* bench = app.add_subcommand("bench", "Time scalar and SIMD kernels");
    std::size_t iterations = 200000;
    bench->add_option("-n,--iterations", iterations, "Calls per kernel");

    CLI11_PARSE(app, argc, argv);

    try {
        if (config_path.empty()) {
            if (const char* env = std::getenv("FECAM_CONFIG")) config_path = env;
        }
        fecam::GlobalConfig cfg = config_path.empty() ? fecam::GlobalConfig{} : fecam::load_config(config_path);
        cfg.finalize();
        for (const std::string& o : overrides) fecam::apply_override(cfg, o);

        if (*transfer) {
            if (amplitude_sweep) amplitudes = amplitude_grid(2.0, 4.0, 0.05);
            write_output(transfer_out, fecam::cmd_transfer(cfg, amplitudes, vgs_step));
        } else if (*search) {
            auto array_in = open_input(array_path);
            auto query_in = open_input(query_path);
            const auto desc = fecam::parse_array_description(array_in, array_path);
            const auto queries = fecam::parse_queries(query_in, query_path);
            const fecam::SearchRun run = fecam::cmd_search(cfg, desc, queries, t_sense);
            for (const std::string& w : run.warnings) std::cerr << "warning: " << w << '\n';
            if (!trace_dir.empty()) {
                std::filesystem::create_directories(trace_dir);
                for (std::size_t q = 0; q < run.trace_csv.size(); ++q)
                    write_output((std::filesystem::path(trace_dir) / ("trace_q" + std::to_string(q) + ".csv")).string(),
                                 run.trace_csv[q]);
            }
            write_output(search_out, run.summary_csv);
        } else if (*sweep) {
            write_output(sweep_out, fecam::cmd_sweep(cfg, sweep_spec));
        } else if (*route) {
            route_options.ternary = mode != "analog";
            route_options.analog = mode != "ternary";
            auto rules_in = open_input(rules_path);
            const fecam::RouteRun run = fecam::cmd_route(cfg, fecam::parse_rules(rules_in, rules_path), route_options);
            if (!table_prefix.empty()) {
                if (route_options.ternary) write_output(table_prefix + ".ternary.txt", run.ternary_table);
                if (route_options.analog) write_output(table_prefix + ".analog.txt", run.analog_table);
            } else {
                if (route_options.ternary) std::cout << "# ternary table\n" << run.ternary_table;
                if (route_options.analog) std::cout << "# analog table\n" << run.analog_table;
                std::cout << "# report\n";
            }
            std::cout << run.report << run.verify_text;
            if (!report_csv.empty() && !run.report_csv.empty()) write_output(report_csv, run.report_csv);
            if (!run.verify_passed) return 3;
        } else if (*bench) {
            std::cout << fecam::cmd_bench(cfg, iterations);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << fecam::category_name(e.category()) << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
