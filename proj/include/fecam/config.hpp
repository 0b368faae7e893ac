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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "fecam/array.hpp"
#include "fecam/cell.hpp"
#include "fecam/costmodel.hpp"
#include "fecam/device_model.hpp"

namespace fecam {

/// All physical constants, read from one INI-style file with the sections
/// [device], [cell], [matchline], [cost] and [general]. Missing keys keep
/// their defaults; unknown keys are rejected.
struct GlobalConfig {
    DeviceParams device;
    CellConfig cell;
    MatchLineParams matchline;
    CostParams cost;
    std::uint64_t rng_seed = 0;

    /// Validates every section and keeps matchline.vdd tied to cell.vdd.
    void finalize();
};

GlobalConfig parse_config(std::istream& in, const std::string& source_name = "<config>");
GlobalConfig load_config(const std::filesystem::path& path);

/// Applies one "section.key=value" override and re-validates.
void apply_override(GlobalConfig& cfg, std::string_view assignment);

/// The config as an INI document that parse_config reads back unchanged.
std::string format_config(const GlobalConfig& cfg);

}  // namespace fecam
