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

#include <cstdint>
#include <string>
#include <vector>

#include "imgauth/image.hpp"

namespace imgauth {

enum class TestPattern {
    Gradient,   // smooth colour ramps with a few soft-edged shapes
    PhotoLike,  // piecewise-smooth regions, hard edges, mild sensor noise
    Noise,      // photo-like scene under heavy grain
};

/// Deterministic synthetic image; identical bytes on every platform for the
/// same arguments.
RgbImage make_test_image(int width, int height, TestPattern pattern, std::uint64_t seed);

struct NamedImage {
    std::string name;
    RgbImage image;
};

/// Images A (400x152), B (522x312) and C (600x800), width x height.
std::vector<NamedImage> standard_test_images();

/// 512x344 scene used for active-attack assessment.
RgbImage attack_scene_image();

}  // namespace imgauth
