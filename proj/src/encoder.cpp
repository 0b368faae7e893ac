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
#include "fecam/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fecam/error.hpp"
#include "fecam/kernels/kernels.hpp"

namespace fecam {

namespace {

void check_width(int width) {
    if (width < 1 || width > kMaxAddressWidth) {
        std::ostringstream msg;
        msg << "address width " << width << " outside [1, " << kMaxAddressWidth << "]";
        throw Error(ErrorCategory::InvalidParameter, msg.str());
    }
}

std::uint64_t space_size(int width) { return std::uint64_t{1} << width; }

void check_range(std::uint64_t lo, std::uint64_t hi, int width) {
    check_width(width);
    if (lo > hi || hi >= space_size(width)) {
        std::ostringstream msg;
        msg << "range [" << lo << ", " << hi << "] invalid for width " << width;
        throw Error(ErrorCategory::OutOfRange, msg.str());
    }
}

void check_digit_layout(int width, int bits_per_cell) {
    check_width(width);
    if (bits_per_cell < 1 || bits_per_cell > 16 || width % bits_per_cell != 0) {
        std::ostringstream msg;
        msg << "width " << width << " is not divisible into " << bits_per_cell << "-bit cells";
        throw Error(ErrorCategory::InvalidParameter, msg.str());
    }
}

}  // namespace

std::string TernaryEntry::to_string() const {
    std::string out;
    out.reserve(bits.size());
    for (TernaryBit b : bits)
        out.push_back(b == TernaryBit::Zero ? '0' : b == TernaryBit::One ? '1' : 'X');
    return out;
}

std::string AnalogEntry::to_string() const {
    std::ostringstream out;
    for (const DigitRange& d : digits) out << '[' << d.lo << '-' << d.hi << ']';
    return out.str();
}

void RangeRule::validate() const { check_range(lo, hi, width); }

std::vector<TernaryEntry> range_to_prefixes(std::uint64_t lo, std::uint64_t hi, int width) {
    check_range(lo, hi, width);
    std::vector<TernaryEntry> entries;
    std::uint64_t cursor = lo;
    while (true) {
        int span_bits = 0;
        while (span_bits < width) {
            const std::uint64_t next = std::uint64_t{1} << (span_bits + 1);
            if (cursor % next != 0 || cursor + next - 1 > hi) break;
            ++span_bits;
        }
        TernaryEntry entry;
        entry.bits.resize(width);
        for (int i = 0; i < width; ++i) {
            const int bit = width - 1 - i;
            entry.bits[i] = bit < span_bits            ? TernaryBit::DontCare
                            : ((cursor >> bit) & 1U)   ? TernaryBit::One
                                                       : TernaryBit::Zero;
        }
        entries.push_back(std::move(entry));
        const std::uint64_t last = cursor + (std::uint64_t{1} << span_bits) - 1;
        if (last >= hi) break;
        cursor = last + 1;
    }
    return entries;
}

std::vector<AnalogEntry> range_to_analog_entries(std::uint64_t lo, std::uint64_t hi, int width,
                                                 int bits_per_cell) {
    check_digit_layout(width, bits_per_cell);
    check_range(lo, hi, width);
    const int n_digits = width / bits_per_cell;
    const std::uint64_t base = std::uint64_t{1} << bits_per_cell;

    std::vector<AnalogEntry> entries;
    std::uint64_t cursor = lo;
    while (true) {
        // Ranged digit position (0 = least significant) and its span.
        int position = 0;
        std::uint64_t block = 1;
        std::uint64_t count = 1;
        std::uint64_t weight = 1;
        for (int k = 0; k < n_digits; ++k, weight *= base) {
            if (cursor % weight != 0 || cursor + weight - 1 > hi) break;
            const std::uint64_t digit = (cursor / weight) % base;
            const std::uint64_t fit = (hi - cursor + 1) / weight;
            position = k;
            block = weight;
            count = std::min(base - digit, fit);
        }

        AnalogEntry entry;
        entry.bits_per_cell = bits_per_cell;
        entry.digits.resize(n_digits);
        for (int i = 0; i < n_digits; ++i) {
            const int k = n_digits - 1 - i;
            const auto digit = static_cast<std::uint32_t>((cursor >> (k * bits_per_cell)) % base);
            if (k > position)
                entry.digits[i] = {digit, digit};
            else if (k == position)
                entry.digits[i] = {digit, static_cast<std::uint32_t>(digit + count - 1)};
            else
                entry.digits[i] = {0, static_cast<std::uint32_t>(base - 1)};
        }
        entries.push_back(std::move(entry));
        const std::uint64_t last = cursor + count * block - 1;
        if (last >= hi) break;
        cursor = last + 1;
    }
    return entries;
}

bool entry_matches(const TernaryEntry& entry, std::uint64_t addr, int width) {
    for (int i = 0; i < width; ++i) {
        const TernaryBit b = entry.bits[i];
        if (b == TernaryBit::DontCare) continue;
        const bool bit = (addr >> (width - 1 - i)) & 1U;
        if (bit != (b == TernaryBit::One)) return false;
    }
    return true;
}

bool entry_matches(const AnalogEntry& entry, std::uint64_t addr, int width) {
    const std::vector<std::uint32_t> digits = address_digits(addr, width, entry.bits_per_cell);
    for (std::size_t i = 0; i < digits.size(); ++i)
        if (digits[i] < entry.digits[i].lo || digits[i] > entry.digits[i].hi) return false;
    return true;
}

bool entries_match(std::span<const TernaryEntry> entries, std::uint64_t addr, int width) {
    return std::any_of(entries.begin(), entries.end(),
                       [&](const TernaryEntry& e) { return entry_matches(e, addr, width); });
}

bool entries_match(std::span<const AnalogEntry> entries, std::uint64_t addr, int width) {
    return std::any_of(entries.begin(), entries.end(),
                       [&](const AnalogEntry& e) { return entry_matches(e, addr, width); });
}

std::vector<std::uint32_t> address_digits(std::uint64_t addr, int width, int bits_per_cell) {
    check_digit_layout(width, bits_per_cell);
    const int n_digits = width / bits_per_cell;
    const std::uint64_t mask = (std::uint64_t{1} << bits_per_cell) - 1;
    std::vector<std::uint32_t> digits(n_digits);
    for (int i = 0; i < n_digits; ++i)
        digits[i] = static_cast<std::uint32_t>((addr >> ((n_digits - 1 - i) * bits_per_cell)) & mask);
    return digits;
}

std::vector<CellWindow> entry_to_cells(const AnalogEntry& entry, const CellConfig& cfg) {
    if (cfg.level_count != (1 << entry.bits_per_cell))
        throw Error(ErrorCategory::InvalidParameter,
                    "cell level count does not match the entry's bits per cell");
    std::vector<CellWindow> cells;
    cells.reserve(entry.digits.size());
    for (const DigitRange& d : entry.digits) {
        if (d.lo > d.hi || d.hi >= static_cast<std::uint32_t>(cfg.level_count))
            throw Error(ErrorCategory::InvalidParameter, "digit range outside the level grid");
        cells.push_back({cfg.level_bounds[d.lo], cfg.level_bounds[d.hi + 1]});
    }
    return cells;
}

double digit_query_voltage(std::uint32_t digit, const CellConfig& cfg) {
    if (digit >= static_cast<std::uint32_t>(cfg.level_count))
        throw Error(ErrorCategory::InvalidParameter, "digit outside the level grid");
    return 0.5 * (cfg.level_bounds[digit] + cfg.level_bounds[digit + 1]);
}

std::vector<double> address_to_query(std::uint64_t addr, int width, int bits_per_cell,
                                     const CellConfig& cfg) {
    std::vector<double> query;
    for (std::uint32_t d : address_digits(addr, width, bits_per_cell))
        query.push_back(digit_query_voltage(d, cfg));
    return query;
}

double digit_sense_time(const FecamArray& arr) {
    const CellConfig& cfg = arr.cfg();
    const DeviceParams& params = arr.params();
    double match_cell = 0.0;
    double mismatch = std::numeric_limits<double>::infinity();
    for (int k = 0; k < cfg.level_count; ++k) {
        const FecamCell cell = program_level(k, cfg, params);
        const double centre = digit_query_voltage(static_cast<std::uint32_t>(k), cfg);
        match_cell = std::max(match_cell, cell_current(cell, centre, cfg.vdd, cfg, params));
        for (int j : {k - 1, k + 1}) {
            if (j < 0 || j >= cfg.level_count) continue;
            const double v = digit_query_voltage(static_cast<std::uint32_t>(j), cfg);
            mismatch = std::min(mismatch, cell_current(cell, v, cfg.vdd, cfg, params));
        }
    }
    const double match_row = match_cell * static_cast<double>(arr.cols());
    if (!(match_row < mismatch)) {
        std::ostringstream msg;
        msg << "a " << arr.cols() << "-cell row draws " << match_row
            << " A when every cell matches, not below the " << mismatch
            << " A of a single one-level mismatch";
        throw Error(ErrorCategory::InvalidParameter, msg.str());
    }
    const MatchLineParams& ml = arr.ml_params();
    return ml_capacitance(ml, arr.cols()) * ml.delta_v_ml / std::sqrt(match_row * mismatch);
}

std::size_t RoutingTable::cells_per_entry() const {
    if (width_ == 0) return 0;
    return mode_ == TableMode::Ternary ? static_cast<std::size_t>(width_)
                                       : static_cast<std::size_t>(width_ / 3);
}

std::optional<std::size_t> RoutingTable::first_match(std::uint64_t addr) const {
    if (entry_rule_.empty()) return std::nullopt;
    if (addr >= space_size(width_)) {
        std::ostringstream msg;
        msg << "address " << addr << " outside the " << width_ << "-bit space";
        throw Error(ErrorCategory::OutOfRange, msg.str());
    }
    const kernels::KernelTable& k = kernels::active_kernels();
    std::ptrdiff_t index = -1;
    if (mode_ == TableMode::Ternary) {
        index = k.first_ternary_match(ternary_value_, ternary_care_, static_cast<std::uint32_t>(addr));
    } else {
        const int n_digits = width_ / 3;
        std::int32_t key[kMaxAddressWidth];
        for (int i = 0; i < n_digits; ++i)
            key[i] = static_cast<std::int32_t>((addr >> ((n_digits - 1 - i) * 3)) & 7U);
        index = k.first_digit_range_match(digit_lo_, digit_hi_, analog_.size(),
                                          std::span<const std::int32_t>(key, n_digits));
    }
    if (index < 0) return std::nullopt;
    return static_cast<std::size_t>(index);
}

std::string RoutingTable::export_text() const {
    std::ostringstream out;
    for (std::size_t e = 0; e < entry_count(); ++e) {
        out << (mode_ == TableMode::Ternary ? ternary_[e].to_string() : analog_[e].to_string())
            << ' ' << rules_[entry_rule_[e]].action << '\n';
    }
    return out.str();
}

RoutingTable compile_table(std::span<const RangeRule> rules, TableMode mode) {
    RoutingTable table;
    table.mode_ = mode;
    table.rules_.assign(rules.begin(), rules.end());
    for (const RangeRule& rule : rules) {
        rule.validate();
        if (table.width_ != 0 && rule.width != table.width_)
            throw Error(ErrorCategory::InconsistentInput, "all rules in a table must share one width");
        table.width_ = rule.width;
    }
    if (rules.empty()) return table;
    if (mode == TableMode::Analog3b) check_digit_layout(table.width_, 3);

    for (std::size_t r = 0; r < rules.size(); ++r) {
        const RangeRule& rule = rules[r];
        if (mode == TableMode::Ternary) {
            for (TernaryEntry& e : range_to_prefixes(rule.lo, rule.hi, rule.width)) {
                table.ternary_.push_back(std::move(e));
                table.entry_rule_.push_back(r);
            }
        } else {
            for (AnalogEntry& e : range_to_analog_entries(rule.lo, rule.hi, rule.width, 3)) {
                table.analog_.push_back(std::move(e));
                table.entry_rule_.push_back(r);
            }
        }
    }

    const int width = table.width_;
    if (mode == TableMode::Ternary) {
        for (const TernaryEntry& e : table.ternary_) {
            std::uint32_t value = 0, care = 0;
            for (int i = 0; i < width; ++i) {
                const std::uint32_t bit = std::uint32_t{1} << (width - 1 - i);
                if (e.bits[i] == TernaryBit::DontCare) continue;
                care |= bit;
                if (e.bits[i] == TernaryBit::One) value |= bit;
            }
            table.ternary_value_.push_back(value);
            table.ternary_care_.push_back(care);
        }
    } else {
        const std::size_t n = table.analog_.size();
        const std::size_t n_digits = static_cast<std::size_t>(width / 3);
        table.digit_lo_.resize(n * n_digits);
        table.digit_hi_.resize(n * n_digits);
        for (std::size_t e = 0; e < n; ++e) {
            for (std::size_t d = 0; d < n_digits; ++d) {
                table.digit_lo_[d * n + e] = static_cast<std::int32_t>(table.analog_[e].digits[d].lo);
                table.digit_hi_[d * n + e] = static_cast<std::int32_t>(table.analog_[e].digits[d].hi);
            }
        }
    }
    return table;
}

std::optional<std::string> lookup(const RoutingTable& table, std::uint64_t addr) {
    const std::optional<std::size_t> entry = table.first_match(addr);
    if (!entry) return std::nullopt;
    return table.rules()[table.entry_rule()[*entry]].action;
}

}  // namespace fecam
