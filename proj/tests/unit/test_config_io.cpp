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

#include <sstream>
#include <string>

#include "fecam/config.hpp"
#include "fecam/error.hpp"
#include "fecam/io.hpp"

namespace {

using fecam::ErrorCategory;

fecam::GlobalConfig parse(const std::string& text) {
    std::istringstream in(text);
    return fecam::parse_config(in, "test.ini");
}

std::string error_of(auto&& fn) {
    try {
        fn();
    } catch (const fecam::Error& e) {
        return std::string(fecam::category_name(e.category())) + ": " + e.what();
    }
    return "";
}

TEST(Config, DefaultsWhenEmpty) {
    const auto cfg = parse("");
    EXPECT_EQ(cfg.device, fecam::DeviceParams{});
    EXPECT_EQ(cfg.cell, fecam::CellConfig{});
    EXPECT_EQ(cfg.cost, fecam::CostParams{});
    EXPECT_EQ(cfg.rng_seed, 0u);
    EXPECT_EQ(cfg.matchline.vdd, cfg.cell.vdd);
}

TEST(Config, ReadsSections) {
    const auto cfg = parse(
        "; comment\n"
        "[device]\n"
        "i_threshold = 5e-8\n"
        "[matchline]\n"
        "c_pmos = 2e-16\n"
        "[cell]\n"
        "level_count = 4\n"
        "level_bounds = 0.1, 0.3, 0.5, 0.7, 0.9\n"
        "[general]\n"
        "rng_seed = 99\n");
    EXPECT_EQ(cfg.device.i_threshold, 5e-8);
    EXPECT_EQ(cfg.matchline.c_pmos, 2e-16);
    EXPECT_EQ(cfg.cell.level_count, 4);
    EXPECT_EQ(cfg.cell.level_bounds.size(), 5u);
    EXPECT_EQ(cfg.rng_seed, 99u);
}

TEST(Config, UnknownFieldIsNamed) {
    const auto msg = error_of([] { parse("[device]\nbogus = 1\n"); });
    EXPECT_NE(msg.find("parse"), std::string::npos);
    EXPECT_NE(msg.find("device.bogus"), std::string::npos);
}

TEST(Config, BadValueNamesField) {
    const auto msg = error_of([] { parse("[device]\ni_on = fast\n"); });
    EXPECT_NE(msg.find("device.i_on"), std::string::npos);
    EXPECT_NE(msg.find("fast"), std::string::npos);
}

TEST(Config, SyntaxErrorHasLine) {
    const auto msg = error_of([] { parse("[device]\ni_on = 1e-6\n[broken\n"); });
    EXPECT_NE(msg.find("test.ini:3"), std::string::npos) << msg;
}

TEST(Config, InvalidPhysicsRejected) {
    EXPECT_FALSE(error_of([] { parse("[device]\nvth_low = 2\n"); }).empty());
    EXPECT_FALSE(error_of([] { parse("[matchline]\nc_drain = -1\n"); }).empty());
    EXPECT_FALSE(error_of([] { parse("[cell]\nlevel_count = 4\n"); }).empty());
}

TEST(Config, OverridesApplyAndValidate) {
    fecam::GlobalConfig cfg;
    fecam::apply_override(cfg, "matchline.c_drain=4e-16");
    EXPECT_EQ(cfg.matchline.c_drain, 4e-16);
    fecam::apply_override(cfg, "cell.vdd=1.2");
    EXPECT_EQ(cfg.matchline.vdd, 1.2);
    EXPECT_THROW(fecam::apply_override(cfg, "matchline.c_drain"), fecam::Error);
    EXPECT_THROW(fecam::apply_override(cfg, "nope.x=1"), fecam::Error);
}

TEST(Config, FormatRoundTrips) {
    fecam::GlobalConfig cfg;
    fecam::apply_override(cfg, "device.coercive_sigma=0.37");
    fecam::apply_override(cfg, "general.rng_seed=12345");
    fecam::apply_override(cfg, "cost.cmos_cell_area=3.5");
    const auto back = parse(fecam::format_config(cfg));
    EXPECT_EQ(back.device, cfg.device);
    EXPECT_EQ(back.cell, cfg.cell);
    EXPECT_EQ(back.matchline, cfg.matchline);
    EXPECT_EQ(back.cost, cfg.cost);
    EXPECT_EQ(back.rng_seed, cfg.rng_seed);
}

TEST(CellSpecs, Parse) {
    auto s = fecam::parse_cell_spec("analog 0.4 0.6");
    EXPECT_EQ(s.kind, fecam::CellSpec::Kind::Analog);
    EXPECT_EQ(s.lower, 0.4);
    EXPECT_EQ(s.upper, 0.6);
    s = fecam::parse_cell_spec("level 3");
    EXPECT_EQ(s.level, 3);
    s = fecam::parse_cell_spec("digital X");
    EXPECT_EQ(s.bit, fecam::TernaryBit::DontCare);
    EXPECT_EQ(fecam::parse_cell_spec("digital 1").bit, fecam::TernaryBit::One);
    for (const char* bad : {"analog 0.4", "level", "digital 2", "magic 1", "level 3 4"})
        EXPECT_THROW(fecam::parse_cell_spec(bad), fecam::Error) << bad;
}

TEST(ArrayFile, ParsesAllKeywords) {
    std::istringstream in(
        "# demo\n"
        "dims 2 3\n"
        "matchline c_pmos 2e-16\n"
        "fill digital X\n"
        "row 0 analog 0.4 0.6\n"
        "row 1 level 0, level 1, digital 0  # trailing\n"
        "cell 1 2 level 7\n");
    const auto d = fecam::parse_array_description(in);
    EXPECT_EQ(d.rows, 2u);
    EXPECT_EQ(d.cols, 3u);
    ASSERT_EQ(d.matchline_overrides.size(), 1u);
    EXPECT_EQ(d.cells[2].kind, fecam::CellSpec::Kind::Analog);
    EXPECT_EQ(d.cells[4].level, 1);
    EXPECT_EQ(d.cells[5].level, 7);
    const auto arr = d.build(fecam::GlobalConfig{});
    EXPECT_EQ(arr.ml_params().c_pmos, 2e-16);
    EXPECT_NEAR(arr.cell(0, 1).upper_fet.vth, 0.6, 1e-9);
}

TEST(ArrayFile, ErrorsCarryLineNumbers) {
    auto err = [](const std::string& text) {
        return error_of([&] {
            std::istringstream in(text);
            fecam::parse_array_description(in, "a.array");
        });
    };
    EXPECT_NE(err("dims 1 2\nrow 0 level 1, level 2, level 3\n").find("a.array:2"), std::string::npos);
    EXPECT_NE(err("row 0 level 1\n").find("a.array:1"), std::string::npos);
    EXPECT_NE(err("dims 1 1\ncell 0 5 level 1\n").find("a.array:2"), std::string::npos);
    EXPECT_NE(err("dims 1 1\nrow 0 level x\n").find("a.array:2"), std::string::npos);
    EXPECT_NE(err("dims 1 1\nfrobnicate\n").find("unknown keyword"), std::string::npos);
    EXPECT_NE(err("# nothing\n").find("missing 'dims"), std::string::npos);
    EXPECT_NE(err("dims 0 1\n").find("a.array:1"), std::string::npos);
}

TEST(Queries, Parse) {
    std::istringstream in("0.3\n\n0.1, 0.2 0.3\n# skip\n");
    const auto q = fecam::parse_queries(in);
    ASSERT_EQ(q.size(), 2u);
    EXPECT_EQ(q[1], (std::vector<double>{0.1, 0.2, 0.3}));
    std::istringstream bad("0.1\n0.2 abc\n");
    EXPECT_NE(error_of([&] { fecam::parse_queries(bad, "q.txt"); }).find("q.txt:2"), std::string::npos);
}

TEST(Rules, Parse) {
    std::istringstream in("# routes\n98305 14712838 24 hop_a\n0 7 3 x\n");
    const auto r = fecam::parse_rules(in);
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[0], (fecam::RangeRule{98305, 14712838, 24, "hop_a"}));
    for (const char* text : {"1 2 3\n", "1 2 3 a b\n", "5 4 8 a\n", "0 300 8 a\n", "x 2 8 a\n"}) {
        std::istringstream bad(std::string("0 1 8 ok\n") + text);
        const auto msg = error_of([&] { fecam::parse_rules(bad, "r.txt"); });
        EXPECT_NE(msg.find("r.txt:2"), std::string::npos) << text << " -> " << msg;
    }
}

TEST(Numbers, ShortestRoundTrip) {
    EXPECT_EQ(fecam::format_number(0.5), "0.5");
    EXPECT_EQ(fecam::format_number(1e-8), "1e-08");
    const double x = 0.1 + 0.2;
    EXPECT_EQ(std::stod(fecam::format_number(x)), x);
}

}  // namespace
