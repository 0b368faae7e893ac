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
#include <gtest/gtest.h>

#include <algorithm>

#include "fecam/costmodel.hpp"
#include "fecam/error.hpp"

namespace {

using fecam::CamMode;
using fecam::CostParams;
using fecam::RangeRule;
using fecam::TableMode;

constexpr double fJ = 1e-15;

TEST(Cost, SearchEnergyExamples) {
    const CostParams p;
    EXPECT_NEAR(fecam::search_energy(p, CamMode::CmosTcam, 648), 382.32 * fJ, 1e-6 * fJ);
    EXPECT_NEAR(fecam::search_energy(p, CamMode::FecamAnalog, 80), 16.56 * fJ, 1e-6 * fJ);
    for (auto m : {CamMode::CmosTcam, CamMode::FecamDigital, CamMode::FecamAnalog}) {
        EXPECT_EQ(fecam::search_energy(p, m, 0), 0.0);
        EXPECT_EQ(fecam::area(p, m, 0), 0.0);
    }
}

TEST(Cost, AreaRatios) {
    const CostParams p;
    EXPECT_NEAR(fecam::area_per_bit(p, CamMode::FecamAnalog) / fecam::area_per_bit(p, CamMode::CmosTcam),
                0.045, 1e-12);
    EXPECT_NEAR(fecam::cell_area(p, CamMode::CmosTcam) / fecam::cell_area(p, CamMode::FecamAnalog),
                1.0 / (3 * 0.045), 1e-12);
    EXPECT_NEAR(1.0 / (3 * 0.045), 7.407, 1e-3);
    // The 2-FeFET digital cell has three times the per-bit area of the analog cell.
    EXPECT_NEAR(fecam::area_per_bit(p, CamMode::FecamDigital) / fecam::area_per_bit(p, CamMode::FecamAnalog),
                3.0, 1e-12);
}

TEST(Cost, PerBitEnergySavings) {
    const CostParams p;
    EXPECT_NEAR(fecam::energy_saving_per_bit(p, CamMode::FecamAnalog), 8.55, 0.05);
    EXPECT_NEAR(fecam::energy_saving_per_bit(p, CamMode::FecamDigital), 3.24, 0.05);
    EXPECT_EQ(fecam::energy_saving_per_bit(p, CamMode::CmosTcam), 1.0);
}

TEST(Cost, WordEnergyUsesCharacterizedWordSizes) {
    const CostParams p;
    EXPECT_NEAR(fecam::word_search_energy(p, CamMode::CmosTcam), 64 * 0.590 * fJ, 1e-9 * fJ);
    EXPECT_NEAR(fecam::word_search_energy(p, CamMode::FecamAnalog), 66 * 0.069 * fJ, 1e-9 * fJ);
}

TEST(Cost, Homogeneous) {
    const CostParams p;
    for (auto m : {CamMode::CmosTcam, CamMode::FecamDigital, CamMode::FecamAnalog})
        for (std::size_t n : {1u, 13u, 648u}) {
            EXPECT_NEAR(fecam::search_energy(p, m, 7 * n), 7 * fecam::search_energy(p, m, n), 1e-27);
            EXPECT_NEAR(fecam::area(p, m, 7 * n), 7 * fecam::area(p, m, n), 1e-9);
        }
}

TEST(Cost, Validation) {
    CostParams p;
    p.energy_per_bit_cmos = 0;
    EXPECT_THROW(p.validate(), fecam::Error);
    p = {};
    p.bits_per_cell_fecam_analog = 0;
    EXPECT_THROW(p.validate(), fecam::Error);
    EXPECT_NO_THROW(CostParams{}.validate());
}

class RoutingReport : public ::testing::Test {
protected:
    std::vector<RangeRule> rules{{98305, 14712838, 24, "hop_a"}};
    fecam::RoutingTable ternary = fecam::compile_table(rules, TableMode::Ternary);
    fecam::RoutingTable analog = fecam::compile_table(rules, TableMode::Analog3b);
};

TEST_F(RoutingReport, ReferenceRangeRatios) {
    const auto r = fecam::routing_report(CostParams{}, ternary, analog);
    EXPECT_EQ(r.ternary_cells, 648u);
    EXPECT_EQ(r.analog_cells, 80u);
    EXPECT_NEAR(r.cell_reduction, 8.1, 1e-3);
    EXPECT_NEAR(r.energy_ratio, (648 * 0.590) / (240 * 0.069), 1e-9);
    EXPECT_NEAR(r.energy_ratio, 23.08, 0.1);
    EXPECT_NEAR(r.area_ratio, 60.0, 1.0);
    EXPECT_NEAR(r.area_ratio, 8.1 / (3 * 0.045), 1e-9);
    EXPECT_EQ(r.reported_area_ratio, 60.5);
    const std::string kv = r.to_key_value();
    EXPECT_NE(kv.find("area_ratio_gap="), std::string::npos);
    EXPECT_NE(kv.find("area_ratio_note="), std::string::npos);
    EXPECT_NE(kv.find("ternary_entries=27\n"), std::string::npos);
    EXPECT_NE(kv.find("analog_entries=10\n"), std::string::npos);
}

TEST_F(RoutingReport, ScaleInvariant) {
    CostParams big;
    big.cmos_cell_area = 317.0;
    const auto a = fecam::routing_report(CostParams{}, ternary, analog);
    const auto b = fecam::routing_report(big, ternary, analog);
    EXPECT_NEAR(a.area_ratio, b.area_ratio, 1e-12 * a.area_ratio);
    EXPECT_EQ(a.energy_ratio, b.energy_ratio);
}

TEST_F(RoutingReport, CsvRowMatchesHeader) {
    const auto r = fecam::routing_report(CostParams{}, ternary, analog);
    const auto commas = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
    EXPECT_EQ(commas(fecam::ComparisonReport::csv_header()), commas(r.to_csv_row()));
    EXPECT_EQ(r.to_csv_row().rfind("27,10,648,80,", 0), 0u);
}

TEST_F(RoutingReport, RejectsMismatchedInputs) {
    const std::vector<RangeRule> other{{0, 4095, 24, "x"}};
    const auto other_analog = fecam::compile_table(other, TableMode::Analog3b);
    try {
        fecam::routing_report(CostParams{}, ternary, other_analog);
        FAIL();
    } catch (const fecam::Error& e) {
        EXPECT_EQ(e.category(), fecam::ErrorCategory::InconsistentInput);
    }
    EXPECT_THROW(fecam::routing_report(CostParams{}, analog, ternary), fecam::Error);
}

TEST(Cost, CrossCheckReportsWithoutFailing) {
    const auto c = fecam::energy_cross_check(CostParams{}, fecam::MatchLineParams{}, CamMode::FecamAnalog, 22);
    EXPECT_EQ(c.calibrated_j_per_bit, 0.069e-15);
    const double expected = (0.10e-15 + 22 * 0.40e-15) * 1.0 * 0.5 / 66.0;
    EXPECT_NEAR(c.estimated_j_per_bit, expected, 1e-24);
    EXPECT_NEAR(c.ratio, expected / 0.069e-15, 1e-9);
    EXPECT_THROW(fecam::energy_cross_check(CostParams{}, fecam::MatchLineParams{}, CamMode::CmosTcam, 0),
                 fecam::Error);
}

}  // namespace
