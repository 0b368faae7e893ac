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
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fecam/array.hpp"
#include "fecam/cell.hpp"
#include "fecam/config.hpp"
#include "fecam/encoder.hpp"

namespace fecam {

/// Per-cell programming spec: `analog lo hi`, `level k` or `digital 0|1|X`.
struct CellSpec {
    enum class Kind { Analog, Level, Digital };
    Kind kind = Kind::Digital;
    double lower = 0.0;
    double upper = 0.0;
    int level = 0;
    TernaryBit bit = TernaryBit::DontCare;

    CellTarget target(const CellConfig& cfg, const DeviceParams& params) const;
};

/// Parsed array description file.
///
///     # comment
///     dims 2 4
///     matchline c_pmos 1e-16
///     fill digital X
///     row 0 analog 0.4 0.6
///     row 1 level 0, level 1, level 2, level 3
///     cell 1 3 digital 1
///
/// A `row` line takes one spec for every column or a single spec for all.
struct ArrayDescription {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::pair<std::string, double>> matchline_overrides;
    std::vector<CellSpec> cells;  // row-major

    /// Programs every row through the write path. Throws on disturb or range errors.
    FecamArray build(const GlobalConfig& cfg) const;
};

CellSpec parse_cell_spec(const std::string& text);

ArrayDescription parse_array_description(std::istream& in, const std::string& source_name = "<array>");

/// One query per non-empty line, values separated by commas or whitespace.
std::vector<std::vector<double>> parse_queries(std::istream& in,
                                               const std::string& source_name = "<queries>");

/// One rule per line: `lo hi width action`.
std::vector<RangeRule> parse_rules(std::istream& in, const std::string& source_name = "<rules>");

/// Shortest round-trippable decimal form used by every CSV writer.
std::string format_number(double v);

}  // namespace fecam
