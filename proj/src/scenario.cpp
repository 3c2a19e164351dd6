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

#include "imgauth/scenario.hpp"

#include "imgauth/error.hpp"

namespace imgauth {

bool is_supported_position(CoeffPos pos) noexcept {
    return pos == CoeffPos{1, 1} || pos == CoeffPos{1, 2} || pos == CoeffPos{3, 6} ||
           pos == CoeffPos{8, 8};
}

ModifierMode ScenarioConfig::mode() const noexcept {
    return std::visit([](const auto& r) { return r.mode; }, recipe);
}

ScenarioConfig ScenarioConfig::parse(std::string_view name, ChannelRoles roles) {
    if (!roles.valid()) throw Error(ErrorCode::InvalidScenario, "channel roles must be distinct");

    ScenarioConfig cfg{std::string(name), SpatialScenario{}, roles};
    if (name == "s1") cfg.recipe = SpatialScenario{4, ModifierMode::Single};
    else if (name == "s2") cfg.recipe = SpatialScenario{1, ModifierMode::Single};
    else if (name == "s3") cfg.recipe = SpatialScenario{8, ModifierMode::Single};
    else if (name == "s4") cfg.recipe = SpatialScenario{1, ModifierMode::XorDual};
    else if (name == "f1") cfg.recipe = FreqScenario{{8, 8}, ModifierMode::Single};
    else if (name == "f2") cfg.recipe = FreqScenario{{1, 1}, ModifierMode::Single};
    else if (name == "f3") cfg.recipe = FreqScenario{{1, 2}, ModifierMode::Single};
    else if (name == "f4") cfg.recipe = FreqScenario{{3, 6}, ModifierMode::Single};
    else if (name == "f5") cfg.recipe = FreqScenario{{3, 6}, ModifierMode::XorDual};
    else throw Error(ErrorCode::InvalidScenario, "unknown scenario '" + std::string(name) + "'");
    return cfg;
}

const std::vector<std::string>& all_scenario_names() {
    static const std::vector<std::string> names{"s1", "s2", "s3", "s4", "f1", "f2", "f3", "f4", "f5"};
    return names;
}

const std::vector<std::string>& spatial_scenario_names() {
    static const std::vector<std::string> names{"s1", "s2", "s3", "s4"};
    return names;
}

const std::vector<std::string>& frequency_scenario_names() {
    static const std::vector<std::string> names{"f1", "f2", "f3", "f4", "f5"};
    return names;
}

std::string describe(const ScenarioConfig& scenario) {
    const char* mode = scenario.mode() == ModifierMode::XorDual ? "xor-dual" : "single";
    if (const auto* s = std::get_if<SpatialScenario>(&scenario.recipe)) {
        return "spatial bit " + std::to_string(s->bit_index) + " " + mode;
    }
    const auto& f = std::get<FreqScenario>(scenario.recipe);
    return "dct (" + std::to_string(f.pos.row) + "," + std::to_string(f.pos.col) + ") " + mode;
}

}  // namespace imgauth
