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

#include "imgauth/embed.hpp"

#include "imgauth/frequency.hpp"
#include "imgauth/spatial.hpp"

namespace imgauth {

RgbImage embed(const RgbImage& image, const CameraId& camera_id, const ScenarioConfig& scenario) {
    if (const auto* s = std::get_if<SpatialScenario>(&scenario.recipe)) {
        return embed_spatial(image, camera_id, *s, scenario.roles);
    }
    return embed_frequency(image, camera_id, std::get<FreqScenario>(scenario.recipe), scenario.roles);
}

}  // namespace imgauth
