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

#include "imgauth/testimages.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace imgauth {
namespace {

// Only raw engine output is used: std distributions are not portable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal() {
        const double u1 = std::max(uniform(), 1e-300);
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

using Color = std::array<double, 3>;

struct Shape {
    bool ellipse;
    double cx, cy, rx, ry;
    Color inner, outer;
    double softness;
};

std::uint8_t to_byte(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

Color random_color(Rng& rng, double lo, double hi) {
    return {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

}  // namespace

RgbImage make_test_image(int width, int height, TestPattern pattern, std::uint64_t seed) {
    Rng rng(seed);
    RgbImage image(width, height);

    const Color top = random_color(rng, 120, 240);
    const Color bottom = random_color(rng, 20, 130);
    const double tilt = rng.uniform(-0.4, 0.4);

    const int shape_count = pattern == TestPattern::Gradient ? 4 : 14;
    std::vector<Shape> shapes;
    for (int i = 0; i < shape_count; ++i) {
        Shape s;
        s.ellipse = rng.uniform() < 0.5;
        s.cx = rng.uniform(0, width);
        s.cy = rng.uniform(0, height);
        s.rx = rng.uniform(0.05, 0.3) * width;
        s.ry = rng.uniform(0.05, 0.3) * height;
        s.inner = random_color(rng, 0, 255);
        s.outer = random_color(rng, 0, 255);
        s.softness = pattern == TestPattern::Gradient ? rng.uniform(0.2, 0.5) : rng.uniform(0.0, 0.05);
        shapes.push_back(s);
    }
    const double grain = pattern == TestPattern::Gradient ? 0.0 : (pattern == TestPattern::PhotoLike ? 3.0 : 24.0);
    const double texture_freq = rng.uniform(0.05, 0.2);

    for (int row = 0; row < height; ++row) {
        for (int col = 0; col < width; ++col) {
            const double t = std::clamp(static_cast<double>(row) / height + tilt * (static_cast<double>(col) / width - 0.5), 0.0, 1.0);
            Color px{};
            for (int c = 0; c < 3; ++c) px[c] = top[c] * (1 - t) + bottom[c] * t;

            for (const Shape& s : shapes) {
                const double dx = (col - s.cx) / s.rx;
                const double dy = (row - s.cy) / s.ry;
                const double d = s.ellipse ? std::sqrt(dx * dx + dy * dy) : std::max(std::abs(dx), std::abs(dy));
                double alpha;
                if (s.softness <= 0.0) alpha = d <= 1.0 ? 1.0 : 0.0;
                else alpha = std::clamp((1.0 + s.softness - d) / (2 * s.softness), 0.0, 1.0);
                if (alpha <= 0.0) continue;
                const double inner_t = std::min(d, 1.0);
                for (int c = 0; c < 3; ++c) {
                    const double fill = s.inner[c] * (1 - inner_t) + s.outer[c] * inner_t;
                    px[c] = px[c] * (1 - alpha) + fill * alpha;
                }
            }
            if (pattern != TestPattern::Gradient) {
                const double texture = 6.0 * std::sin(texture_freq * col) * std::cos(texture_freq * 0.7 * row);
                for (int c = 0; c < 3; ++c) px[c] += texture;
            }
            if (grain > 0.0) {
                for (int c = 0; c < 3; ++c) px[c] += grain * rng.normal();
            }
            image.set_pixel(row, col, {to_byte(px[0]), to_byte(px[1]), to_byte(px[2])});
        }
    }
    return image;
}

std::vector<NamedImage> standard_test_images() {
    return {
        {"A", make_test_image(400, 152, TestPattern::Gradient, 0xA)},
        {"B", make_test_image(522, 312, TestPattern::PhotoLike, 0xB)},
        {"C", make_test_image(600, 800, TestPattern::Noise, 0xC)},
    };
}

RgbImage attack_scene_image() { return make_test_image(512, 344, TestPattern::PhotoLike, 0x5CE9E); }

}  // namespace imgauth
