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
#include "fecam/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include "fecam/error.hpp"

namespace fecam {

namespace {

using Setter = std::function<void(GlobalConfig&, const std::string&)>;
using Getter = std::function<std::string(const GlobalConfig&)>;

struct Field {
    Setter set;
    Getter get;
};

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* kind) {
    throw Error(ErrorCategory::Parse, "config field " + key + ": cannot read '" + value + "' as " + kind);
}

double to_double(const std::string& key, const std::string& text) {
    std::istringstream in(text);
    in.imbue(std::locale::classic());
    double value = 0.0;
    if (!(in >> value) || !(in >> std::ws).eof()) bad_value(key, text, "a number");
    return value;
}

template <typename Int>
Int to_int(const std::string& key, const std::string& text) {
    Int value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) bad_value(key, text, "an integer");
    return value;
}

std::string show(double v) {
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
    std::vector<double> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) bad_value(key, text, "a comma-separated list");
        values.push_back(to_double(key, item.substr(first, last - first + 1)));
    }
    return values;
}

#define FECAM_DOUBLE(section, member)                                                         \
    {                                                                                         \
        #section "." #member, {                                                               \
            [](GlobalConfig& c, const std::string& v) {                                       \
                c.section.member = to_double(#section "." #member, v);                        \
            },                                                                                \
                [](const GlobalConfig& c) { return show(c.section.member); }                  \
        }                                                                                     \
    }

#define FECAM_INT(section, member)                                                            \
    {                                                                                         \
        #section "." #member, {                                                               \
            [](GlobalConfig& c, const std::string& v) {                                       \
                c.section.member = to_int<decltype(c.section.member)>(#section "." #member, v); \
            },                                                                                \
                [](const GlobalConfig& c) { return std::to_string(c.section.member); }        \
        }                                                                                     \
    }

const std::map<std::string, Field>& fields() {
    static const std::map<std::string, Field> table = {
        FECAM_DOUBLE(device, vth_low),
        FECAM_DOUBLE(device, vth_high),
        FECAM_DOUBLE(device, coercive_mu),
        FECAM_DOUBLE(device, coercive_sigma),
        FECAM_DOUBLE(device, subthreshold_slope),
        FECAM_DOUBLE(device, i_on),
        FECAM_DOUBLE(device, i_off),
        FECAM_DOUBLE(device, i_threshold),
        FECAM_DOUBLE(device, v_dsat),
        FECAM_DOUBLE(device, v_prog_min),
        FECAM_DOUBLE(device, v_prog_max),
        FECAM_DOUBLE(device, v_erase),
        FECAM_DOUBLE(cell, vdd),
        FECAM_INT(cell, level_count),
        FECAM_DOUBLE(cell, digital_one_lower),
        FECAM_DOUBLE(cell, digital_zero_upper),
        FECAM_DOUBLE(cell, inverter_width),
        {"cell.level_bounds",
         {[](GlobalConfig& c, const std::string& v) {
              c.cell.level_bounds = to_list("cell.level_bounds", v);
          },
          [](const GlobalConfig& c) {
              std::string out;
              for (double b : c.cell.level_bounds) out += (out.empty() ? "" : ", ") + show(b);
              return out;
          }}},
        FECAM_DOUBLE(matchline, c_pmos),
        FECAM_DOUBLE(matchline, c_drain),
        FECAM_DOUBLE(matchline, c_parasitic),
        FECAM_DOUBLE(matchline, delta_v_ml),
        FECAM_DOUBLE(matchline, i_discharge_avg),
        FECAM_DOUBLE(cost, energy_per_bit_cmos),
        FECAM_DOUBLE(cost, energy_per_bit_fecam_digital),
        FECAM_DOUBLE(cost, energy_per_bit_fecam_analog),
        FECAM_DOUBLE(cost, area_per_bit_ratio_analog_vs_cmos),
        FECAM_INT(cost, bits_per_cell_cmos),
        FECAM_INT(cost, bits_per_cell_fecam_digital),
        FECAM_INT(cost, bits_per_cell_fecam_analog),
        FECAM_DOUBLE(cost, cmos_cell_area),
        FECAM_INT(cost, word_cells_cmos),
        FECAM_INT(cost, word_cells_fecam_digital),
        FECAM_INT(cost, word_cells_fecam_analog),
        FECAM_DOUBLE(cost, reported_routing_area_ratio),
        FECAM_DOUBLE(cost, reported_routing_energy_ratio),
        {"general.rng_seed",
         {[](GlobalConfig& c, const std::string& v) {
              c.rng_seed = to_int<std::uint64_t>("general.rng_seed", v);
          },
          [](const GlobalConfig& c) { return std::to_string(c.rng_seed); }}},
    };
    return table;
}

#undef FECAM_DOUBLE
#undef FECAM_INT

void set_field(GlobalConfig& cfg, const std::string& key, const std::string& value) {
    const auto it = fields().find(key);
    if (it == fields().end()) throw Error(ErrorCategory::Parse, "unknown config field " + key);
    it->second.set(cfg, value);
}

}  // namespace

void GlobalConfig::finalize() {
    matchline.vdd = cell.vdd;
    device.validate();
    cell.validate();
    matchline.validate();
    cost.validate();
}

GlobalConfig parse_config(std::istream& in, const std::string& source_name) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        std::ostringstream msg;
        msg << source_name << ":" << e.line() << ": " << e.message();
        throw Error(ErrorCategory::Parse, msg.str());
    }

    GlobalConfig cfg;
    for (const auto& [section, body] : tree) {
        if (!body.data().empty()) {
            throw Error(ErrorCategory::Parse,
                        source_name + ": key '" + section + "' appears outside a section");
        }
        for (const auto& [key, value] : body) {
            try {
                set_field(cfg, section + "." + key, value.get_value<std::string>());
            } catch (const Error& e) {
                throw Error(e.category(), source_name + ": " + e.what());
            }
        }
    }
    try {
        cfg.finalize();
    } catch (const Error& e) {
        throw Error(ErrorCategory::Parse, source_name + ": " + e.what());
    }
    return cfg;
}

GlobalConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCategory::Io, "cannot open config file " + path.string());
    return parse_config(in, path.string());
}

void apply_override(GlobalConfig& cfg, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
        throw Error(ErrorCategory::Parse,
                    "override '" + std::string(assignment) + "' is not of the form section.key=value");
    set_field(cfg, std::string(assignment.substr(0, eq)), std::string(assignment.substr(eq + 1)));
    cfg.finalize();
}

std::string format_config(const GlobalConfig& cfg) {
    std::ostringstream out;
    std::string current;
    for (const char* section : {"device", "cell", "matchline", "cost", "general"}) {
        out << (current.empty() ? "" : "\n") << '[' << section << "]\n";
        current = section;
        const std::string prefix = std::string(section) + ".";
        for (const auto& [key, field] : fields()) {
            if (key.rfind(prefix, 0) == 0)
                out << key.substr(prefix.size()) << " = " << field.get(cfg) << '\n';
        }
    }
    return out.str();
}

}  // namespace fecam
