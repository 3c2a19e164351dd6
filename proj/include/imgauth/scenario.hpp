// Copyright 2026 The imgauth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "imgauth/image.hpp"

namespace imgauth {

enum class ModifierMode { Single, XorDual };

/// Bit substitution: bit_index is 1-based from the LSB (1, 4 or 8).
struct SpatialScenario {
    int bit_index = 1;
    ModifierMode mode = ModifierMode::Single;
    bool operator==(const SpatialScenario&) const = default;
};

/// 1-based (row, col) coefficient position inside an 8x8 DCT block.
struct CoeffPos {
    int row = 1;
    int col = 1;
    bool operator==(const CoeffPos&) const = default;
};

struct FreqScenario {
    CoeffPos pos{3, 6};
    ModifierMode mode = ModifierMode::Single;
    bool operator==(const FreqScenario&) const = default;
};

/// True for (1,1), (1,2), (3,6) and (8,8).
bool is_supported_position(CoeffPos pos) noexcept;

/// A named embedding recipe. Names: s1 (bit 4), s2 (LSB), s3 (MSB),
/// s4 (XOR-dual LSB), f1 (8,8), f2 (1,1), f3 (1,2), f4 (3,6),
/// f5 (XOR-dual (3,6)).
struct ScenarioConfig {
    std::string name;
    std::variant<SpatialScenario, FreqScenario> recipe;
    ChannelRoles roles;

    bool is_spatial() const noexcept { return std::holds_alternative<SpatialScenario>(recipe); }
    ModifierMode mode() const noexcept;

    /// Throws InvalidScenario for unknown names.
    static ScenarioConfig parse(std::string_view name, ChannelRoles roles = {});
    bool operator==(const ScenarioConfig&) const = default;
};

const std::vector<std::string>& all_scenario_names();
const std::vector<std::string>& spatial_scenario_names();
const std::vector<std::string>& frequency_scenario_names();

std::string describe(const ScenarioConfig& scenario);

}  // namespace imgauth
