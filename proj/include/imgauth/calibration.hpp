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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace imgauth {

struct CalibrationOptions {
    std::size_t blocks = 1000;  // sampled blocks per frequency scenario
    std::uint64_t seed = 0x7A0;
};

struct ScenarioDeviation {
    std::string scenario;
    std::size_t blocks = 0;
    double max_deviation = 0.0;
};

struct CalibrationResult {
    double tolerance = 0.0;      // 1.5 x max_deviation
    double max_deviation = 0.0;  // over all sampled blocks
    std::vector<ScenarioDeviation> per_scenario;
};

/// Embeds random-content images (odd sizes, so edge blocks are included)
/// under every frequency scenario with random camera IDs, samples
/// `blocks` blocks per scenario and measures the clean-image coefficient
/// deviation |carrier - modifier|.
CalibrationResult calibrate_tolerance(const CalibrationOptions& options = {});

}  // namespace imgauth
