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
#include "fecam/io.hpp"

#include <charconv>
#include <istream>
#include <sstream>

#include "fecam/error.hpp"

namespace fecam {

namespace {

[[noreturn]] void parse_error(const std::string& source, std::size_t line, const std::string& what) {
    std::ostringstream msg;
    msg << source << ":" << line << ": " << what;
    throw Error(ErrorCategory::Parse, msg.str());
}

std::string strip_comment(std::string line) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = line.find_last_not_of(" \t\r");
    return line.substr(first, last - first + 1);
}

bool read_double(std::istream& in, double& out) {
    std::string token;
    if (!(in >> token)) return false;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

template <typename Int>
bool read_int(std::istream& in, Int& out) {
    std::string token;
    if (!(in >> token)) return false;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

}  // namespace

CellTarget CellSpec::target(const CellConfig& cfg, const DeviceParams& params) const {
    switch (kind) {
        case Kind::Analog: return analog_target(lower, upper, cfg, params);
        case Kind::Level: return level_target(level, cfg, params);
        case Kind::Digital: return digital_target(bit, cfg, params);
    }
    return digital_target(TernaryBit::DontCare, cfg, params);
}

CellSpec parse_cell_spec(const std::string& text) {
    std::istringstream in(text);
    std::string kind;
    in >> kind;
    CellSpec spec;
    if (kind == "analog") {
        spec.kind = CellSpec::Kind::Analog;
        if (!read_double(in, spec.lower) || !read_double(in, spec.upper))
            throw Error(ErrorCategory::Parse, "expected 'analog <lo> <hi>', got '" + text + "'");
    } else if (kind == "level") {
        spec.kind = CellSpec::Kind::Level;
        if (!read_int(in, spec.level))
            throw Error(ErrorCategory::Parse, "expected 'level <k>', got '" + text + "'");
    } else if (kind == "digital") {
        spec.kind = CellSpec::Kind::Digital;
        std::string bit;
        in >> bit;
        if (bit == "0") spec.bit = TernaryBit::Zero;
        else if (bit == "1") spec.bit = TernaryBit::One;
        else if (bit == "X" || bit == "x") spec.bit = TernaryBit::DontCare;
        else throw Error(ErrorCategory::Parse, "expected 'digital 0|1|X', got '" + text + "'");
    } else {
        throw Error(ErrorCategory::Parse, "unknown cell spec '" + text + "'");
    }
    std::string extra;
    if (in >> extra) throw Error(ErrorCategory::Parse, "trailing text in cell spec '" + text + "'");
    return spec;
}

ArrayDescription parse_array_description(std::istream& in, const std::string& source_name) {
    ArrayDescription desc;
    bool have_dims = false;
    std::string raw;
    std::size_t line_no = 0;
    auto need_dims = [&] {
        if (!have_dims) parse_error(source_name, line_no, "'dims' must come before cell specs");
    };
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = strip_comment(raw);
        if (line.empty()) continue;
        std::istringstream words(line);
        std::string keyword;
        words >> keyword;
        std::string rest;
        std::getline(words >> std::ws, rest);

        try {
            if (keyword == "dims") {
                std::istringstream dims(rest);
                if (have_dims || !read_int(dims, desc.rows) || !read_int(dims, desc.cols) ||
                    desc.rows == 0 || desc.cols == 0 || !(dims >> std::ws).eof())
                    parse_error(source_name, line_no, "expected a single 'dims <rows> <cols>' with positive sizes");
                have_dims = true;
                desc.cells.assign(desc.rows * desc.cols, CellSpec{});
            } else if (keyword == "matchline") {
                std::istringstream kv(rest);
                std::string key;
                double value = 0.0;
                if (!(kv >> key) || !read_double(kv, value))
                    parse_error(source_name, line_no, "expected 'matchline <key> <value>'");
                desc.matchline_overrides.emplace_back(key, value);
            } else if (keyword == "fill") {
                need_dims();
                desc.cells.assign(desc.rows * desc.cols, parse_cell_spec(rest));
            } else if (keyword == "row") {
                need_dims();
                std::istringstream rs(rest);
                std::size_t r = 0;
                if (!read_int(rs, r) || r >= desc.rows)
                    parse_error(source_name, line_no, "row index missing or outside the array");
                std::string specs;
                std::getline(rs >> std::ws, specs);
                std::vector<CellSpec> parsed;
                std::stringstream list(specs);
                std::string item;
                while (std::getline(list, item, ',')) parsed.push_back(parse_cell_spec(strip_comment(item)));
                if (parsed.size() == 1) parsed.assign(desc.cols, parsed.front());
                if (parsed.size() != desc.cols) {
                    std::ostringstream msg;
                    msg << "row has " << parsed.size() << " cell specs but the array has "
                        << desc.cols << " columns";
                    parse_error(source_name, line_no, msg.str());
                }
                std::copy(parsed.begin(), parsed.end(), desc.cells.begin() + r * desc.cols);
            } else if (keyword == "cell") {
                need_dims();
                std::istringstream cs(rest);
                std::size_t r = 0, c = 0;
                if (!read_int(cs, r) || !read_int(cs, c) || r >= desc.rows || c >= desc.cols)
                    parse_error(source_name, line_no, "cell index missing or outside the array");
                std::string spec;
                std::getline(cs >> std::ws, spec);
                desc.cells[r * desc.cols + c] = parse_cell_spec(spec);
            } else {
                parse_error(source_name, line_no, "unknown keyword '" + keyword + "'");
            }
        } catch (const Error& e) {
            if (e.category() != ErrorCategory::Parse || std::string(e.what()).rfind(source_name, 0) == 0)
                throw;
            parse_error(source_name, line_no, e.what());
        }
    }
    if (!have_dims) parse_error(source_name, line_no, "missing 'dims <rows> <cols>'");
    return desc;
}

FecamArray ArrayDescription::build(const GlobalConfig& cfg) const {
    MatchLineParams ml = cfg.matchline;
    for (const auto& [key, value] : matchline_overrides) {
        if (key == "c_pmos") ml.c_pmos = value;
        else if (key == "c_drain") ml.c_drain = value;
        else if (key == "c_parasitic") ml.c_parasitic = value;
        else if (key == "delta_v_ml") ml.delta_v_ml = value;
        else if (key == "i_discharge_avg") ml.i_discharge_avg = value;
        else throw Error(ErrorCategory::Parse, "unknown matchline override '" + key + "'");
    }
    FecamArray arr(rows, cols, cfg.cell, cfg.device, ml);
    std::vector<CellTarget> targets(cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c)
            targets[c] = cells[r * cols + c].target(cfg.cell, cfg.device);
        program_row(arr, r, targets);
    }
    return arr;
}

std::vector<std::vector<double>> parse_queries(std::istream& in, const std::string& source_name) {
    std::vector<std::vector<double>> queries;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = strip_comment(raw);
        if (line.empty()) continue;
        for (char& ch : line)
            if (ch == ',') ch = ' ';
        std::istringstream values(line);
        std::vector<double> query;
        double v = 0.0;
        while (!(values >> std::ws).eof()) {
            if (!read_double(values, v)) parse_error(source_name, line_no, "malformed query value");
            query.push_back(v);
        }
        queries.push_back(std::move(query));
    }
    return queries;
}

std::vector<RangeRule> parse_rules(std::istream& in, const std::string& source_name) {
    std::vector<RangeRule> rules;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = strip_comment(raw);
        if (line.empty()) continue;
        std::istringstream fields(line);
        RangeRule rule;
        if (!read_int(fields, rule.lo) || !read_int(fields, rule.hi) || !read_int(fields, rule.width) ||
            !(fields >> rule.action) || !(fields >> std::ws).eof())
            parse_error(source_name, line_no, "expected 'lo hi width action'");
        try {
            rule.validate();
        } catch (const Error& e) {
            parse_error(source_name, line_no, e.what());
        }
        rules.push_back(std::move(rule));
    }
    return rules;
}

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace fecam
