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
#include <string>
#include <vector>

#include "fecam/array.hpp"
#include "fecam/encoder.hpp"

namespace fecam {

enum class CamMode { CmosTcam, FecamDigital, FecamAnalog };

/// Calibration constants at the 45 nm node. Energies in joules per stored bit,
/// areas in units of one CMOS 16T TCAM cell.
struct CostParams {
    double energy_per_bit_cmos = 0.590e-15;
    double energy_per_bit_fecam_digital = 0.182e-15;
    double energy_per_bit_fecam_analog = 0.069e-15;
    double area_per_bit_ratio_analog_vs_cmos = 0.045;
    int bits_per_cell_cmos = 1;
    int bits_per_cell_fecam_digital = 1;
    int bits_per_cell_fecam_analog = 3;
    double cmos_cell_area = 1.0;
    /// Word sizes the per-bit energies were characterized at.
    int word_cells_cmos = 64;
    int word_cells_fecam_digital = 64;
    int word_cells_fecam_analog = 22;
    /// Reference routing-table savings, carried into reports for comparison.
    double reported_routing_area_ratio = 60.5;
    double reported_routing_energy_ratio = 23.1;

    void validate() const;
    bool operator==(const CostParams&) const = default;
};

double energy_per_bit(const CostParams& p, CamMode mode);
int bits_per_cell(const CostParams& p, CamMode mode);

/// n_cells * bits_per_cell * energy_per_bit
double search_energy(const CostParams& p, CamMode mode, std::size_t n_cells);

/// Area of one cell. The FeCAM cell is the same 2-FeFET structure in both
/// modes: 3 bits at 4.5% of a CMOS bit in analog mode.
double cell_area(const CostParams& p, CamMode mode);
double area(const CostParams& p, CamMode mode, std::size_t n_cells);
double area_per_bit(const CostParams& p, CamMode mode);

/// CMOS energy per bit over the given mode's energy per bit.
double energy_saving_per_bit(const CostParams& p, CamMode mode);

/// Search energy of one word at the characterized word size.
double word_search_energy(const CostParams& p, CamMode mode);

struct ComparisonReport {
    std::size_t ternary_entries = 0;
    std::size_t analog_entries = 0;
    std::size_t ternary_cells = 0;
    std::size_t analog_cells = 0;
    double cell_reduction = 0.0;
    double cmos_area = 0.0;
    double analog_area = 0.0;
    double area_ratio = 0.0;
    double cmos_energy_j = 0.0;
    double analog_energy_j = 0.0;
    double energy_ratio = 0.0;
    double reported_area_ratio = 0.0;
    double reported_energy_ratio = 0.0;

    /// "key=value" lines.
    std::string to_key_value() const;
    static std::string csv_header();
    std::string to_csv_row() const;
};

/// Throws InconsistentInput when the tables come from different rules or
/// are not one ternary and one analog table.
ComparisonReport routing_report(const CostParams& p, const RoutingTable& ternary,
                                const RoutingTable& analog);

/// Compares the calibrated per-bit search energy with a first-order
/// C_ML * vdd * delta_v_ml estimate for a word of n_cols cells. Informational.
struct EnergyCrossCheck {
    double calibrated_j_per_bit;
    double estimated_j_per_bit;
    double ratio;  // estimated / calibrated
};
EnergyCrossCheck energy_cross_check(const CostParams& p, const MatchLineParams& ml, CamMode mode,
                                    std::size_t n_cols);

}  // namespace fecam
