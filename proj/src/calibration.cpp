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

#include "imgauth/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "imgauth/frequency.hpp"
#include "imgauth/scenario.hpp"
#include "imgauth/spatial.hpp"
#include "imgauth/testimages.hpp"

namespace imgauth {

CalibrationResult calibrate_tolerance(const CalibrationOptions& options) {
    std::mt19937_64 rng(options.seed);
    CalibrationResult result;

    for (const std::string& name : frequency_scenario_names()) {
        const ScenarioConfig config = ScenarioConfig::parse(name);
        const auto& recipe = std::get<FreqScenario>(config.recipe);
        ScenarioDeviation dev{name, 0, 0.0};

        while (dev.blocks < options.blocks) {
            // 8k+r sides keep partial edge blocks in every sample.
            const int width = 8 * static_cast<int>(8 + rng() % 24) + static_cast<int>(rng() % 8);
            const int height = 8 * static_cast<int>(8 + rng() % 24) + static_cast<int>(rng() % 8);
            const auto pattern = static_cast<TestPattern>(rng() % 3);
            const RgbImage image = make_test_image(width, height, pattern, rng());

            std::string id(8 + rng() % 24, '\0');
            for (char& c : id) c = static_cast<char>('!' + rng() % 94);
            const CameraId camera = CameraId::from_text(id);

            const RgbImage stego = embed_frequency(image, camera, recipe, config.roles);
            const CipherPlane cipher =
                build_modifier(stego, config.roles, recipe.mode, derive_cipher_key(camera));
            const ChannelPlane& carrier = stego.plane(config.roles.modified);

            const int block_rows = (height + kBlockSize - 1) / kBlockSize;
            const int block_cols = (width + kBlockSize - 1) / kBlockSize;
            const std::size_t take =
                std::min<std::size_t>(options.blocks - dev.blocks, static_cast<std::size_t>(block_rows * block_cols) / 4);
            for (std::size_t i = 0; i < take; ++i) {
                // Bias a quarter of the draws onto the last row/column.
                int br = static_cast<int>(rng() % block_rows);
                int bc = static_cast<int>(rng() % block_cols);
                if (i % 4 == 0) br = block_rows - 1;
                if (i % 4 == 1) bc = block_cols - 1;
                const double d = std::abs(block_coefficient(carrier, br, bc, recipe.pos) -
                                          block_coefficient(cipher, br, bc, recipe.pos));
                dev.max_deviation = std::max(dev.max_deviation, d);
                ++dev.blocks;
            }
        }
        result.max_deviation = std::max(result.max_deviation, dev.max_deviation);
        result.per_scenario.push_back(dev);
    }
    result.tolerance = 1.5 * result.max_deviation;
    return result;
}

}  // namespace imgauth
