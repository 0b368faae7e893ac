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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fecam/array.hpp"
#include "fecam/cell.hpp"

namespace fecam {

/// Maximum address width handled by the encoder (32-bit lanes in the match kernels).
inline constexpr int kMaxAddressWidth = 32;

/// Prefix-form ternary row, most significant bit first.
struct TernaryEntry {
    std::vector<TernaryBit> bits;

    /// "0"/"1"/"X" string, MSB first.
    std::string to_string() const;
    bool operator==(const TernaryEntry&) const = default;
};

struct DigitRange {
    std::uint32_t lo;
    std::uint32_t hi;
    bool operator==(const DigitRange&) const = default;
};

/// Multi-bit analog row: one digit range per cell, most significant digit first.
struct AnalogEntry {
    int bits_per_cell = 3;
    std::vector<DigitRange> digits;

    /// "[lo-hi]" per cell, MSB first.
    std::string to_string() const;
    bool operator==(const AnalogEntry&) const = default;
};

struct RangeRule {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    int width = 0;
    std::string action;

    void validate() const;
    bool operator==(const RangeRule&) const = default;
};

/// Minimal prefix cover of [lo, hi]: largest aligned block at the cursor, repeatedly.
std::vector<TernaryEntry> range_to_prefixes(std::uint64_t lo, std::uint64_t hi, int width);

/// Greedy digit-range cover in base 2^bits_per_cell: at the cursor, the
/// widest entry with fixed high digits, one ranged digit and wildcard low digits.
std::vector<AnalogEntry> range_to_analog_entries(std::uint64_t lo, std::uint64_t hi, int width,
                                                 int bits_per_cell);

bool entry_matches(const TernaryEntry& entry, std::uint64_t addr, int width);
bool entry_matches(const AnalogEntry& entry, std::uint64_t addr, int width);
bool entries_match(std::span<const TernaryEntry> entries, std::uint64_t addr, int width);
bool entries_match(std::span<const AnalogEntry> entries, std::uint64_t addr, int width);

/// Base-2^bits_per_cell digits of addr, MSB first.
std::vector<std::uint32_t> address_digits(std::uint64_t addr, int width, int bits_per_cell);

struct CellWindow {
    double lower;
    double upper;
};

/// Cell k gets [b_{d_lo}, b_{d_hi + 1}] on the fence-post grid.
std::vector<CellWindow> entry_to_cells(const AnalogEntry& entry, const CellConfig& cfg);

/// Search voltage of digit d: the centre of its level window.
double digit_query_voltage(std::uint32_t digit, const CellConfig& cfg);

std::vector<double> address_to_query(std::uint64_t addr, int width, int bits_per_cell,
                                     const CellConfig& cfg);

/// Sense time for searching digit-coded rows with level-centre queries. The
/// match-line threshold current sits at the geometric mean of the largest
/// all-match row current and the smallest single-cell mismatch current (one
/// level off). Throws InvalidParameter when the row is too wide to separate.
double digit_sense_time(const FecamArray& arr);

enum class TableMode { Ternary, Analog3b };

class RoutingTable {
public:
    TableMode mode() const { return mode_; }
    int width() const { return width_; }
    int bits_per_cell() const { return mode_ == TableMode::Ternary ? 1 : 3; }
    const std::vector<RangeRule>& rules() const { return rules_; }
    const std::vector<TernaryEntry>& ternary_entries() const { return ternary_; }
    const std::vector<AnalogEntry>& analog_entries() const { return analog_; }
    /// Index into rules() of the rule each entry came from.
    const std::vector<std::size_t>& entry_rule() const { return entry_rule_; }

    std::size_t entry_count() const { return entry_rule_.size(); }
    std::size_t cells_per_entry() const;
    std::size_t cell_count() const { return entry_count() * cells_per_entry(); }

    /// Index of the first matching entry.
    std::optional<std::size_t> first_match(std::uint64_t addr) const;

    /// One entry per line: ternary as 0/1/X strings, analog as [lo-hi] per cell,
    /// followed by a space and the action.
    std::string export_text() const;

private:
    friend RoutingTable compile_table(std::span<const RangeRule> rules, TableMode mode);

    TableMode mode_ = TableMode::Ternary;
    int width_ = 0;
    std::vector<RangeRule> rules_;
    std::vector<TernaryEntry> ternary_;
    std::vector<AnalogEntry> analog_;
    std::vector<std::size_t> entry_rule_;

    // Kernel layouts.
    std::vector<std::uint32_t> ternary_value_;
    std::vector<std::uint32_t> ternary_care_;
    std::vector<std::int32_t> digit_lo_;  // digit-major
    std::vector<std::int32_t> digit_hi_;
};

/// Concatenates per-rule covers in rule order (first match wins).
RoutingTable compile_table(std::span<const RangeRule> rules, TableMode mode);

/// Action of the first matching entry, or nullopt for no match.
std::optional<std::string> lookup(const RoutingTable& table, std::uint64_t addr);

}  // namespace fecam
