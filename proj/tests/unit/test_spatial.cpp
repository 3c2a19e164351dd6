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

#include <doctest.h>

#include <cstdlib>
#include <random>

#include "imgauth/error.hpp"
#include "imgauth/metrics.hpp"
#include "imgauth/spatial.hpp"
#include "imgauth/verifier.hpp"
#include "oracles.hpp"

using namespace imgauth;

TEST_CASE("substitute_bit examples") {
    CHECK(substitute_bit(0b01100100, 0b10110011, 1) == 0b01100101);
    for (int k = 1; k <= 8; ++k) CHECK(substitute_bit(0b01100100, 0b01100100, k) == 0b01100100);
    CHECK(substitute_bit(0b00000000, 0b11111111, 8) == 0b10000000);
    CHECK_THROWS_AS(substitute_bit(1, 2, 0), Error);
    CHECK_THROWS_AS(substitute_bit(1, 2, 9), Error);
}

TEST_CASE("substitute_bit touches only the chosen bit") {
    for (int a = 0; a < 256; a += 7) {
        for (int b = 0; b < 256; b += 5) {
            for (int k = 1; k <= 8; ++k) {
                const int mask = 1 << (k - 1);
                const int got = substitute_bit(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b), k);
                REQUIRE((got & ~mask) == (a & ~mask));
                REQUIRE((got & mask) == (b & mask));
            }
        }
    }
}

TEST_CASE("build_modifier single and xor-dual") {
    const CipherKey key = derive_cipher_key(CameraId::from_text("acef"));
    RgbImage img(20, 9);
    for (auto& s : img.plane(Channel::Blue).samples()) s = 0xF0;
    for (auto& s : img.plane(Channel::Green).samples()) s = 0x0F;
    CHECK(build_modifier(img, {}, ModifierMode::Single, key) == encrypt_plane(img.plane(Channel::Blue), key));
    CHECK(build_modifier(img, {}, ModifierMode::XorDual, key) == encrypt_plane(ChannelPlane(20, 9, 0xFF), key));

    std::mt19937_64 rng(31);
    RgbImage same = oracle::random_image(20, 9, rng);
    same.plane(Channel::Green) = same.plane(Channel::Blue);
    CHECK(build_modifier(same, {}, ModifierMode::XorDual, key) == encrypt_plane(ChannelPlane(20, 9, 0), key));
}

TEST_CASE("spatial embedding changes only the scenario bit and the reserve") {
    std::mt19937_64 rng(32);
    const CameraId id = CameraId::from_text("cam-spatial");
    for (auto [bit, mode] : {std::pair{1, ModifierMode::Single}, {4, ModifierMode::Single}, {8, ModifierMode::Single},
                             {1, ModifierMode::XorDual}}) {
        const RgbImage in = oracle::random_image(37, 23, rng);
        const RgbImage out = embed_spatial(in, id, {bit, mode});
        REQUIRE(out.width() == in.width());
        CHECK(out.plane(Channel::Blue) == in.plane(Channel::Blue));
        int max_red = 0;
        const int mask = 1 << (bit - 1);
        for (std::size_t i = 0; i < in.pixel_count(); ++i) {
            const int a = in.plane(Channel::Red).samples()[i];
            const int b = out.plane(Channel::Red).samples()[i];
            REQUIRE((a & ~mask) == (b & ~mask));
            max_red = std::max(max_red, std::abs(a - b));
            const int g0 = in.plane(Channel::Green).samples()[i];
            const int g1 = out.plane(Channel::Green).samples()[i];
            if (i < PhotoId::kBits) REQUIRE((g0 & 0xFE) == (g1 & 0xFE));
            else REQUIRE(g0 == g1);
        }
        CHECK(max_red <= mask);
        const auto mism = oracle::spatial_mismatches(out, {bit, mode}, "cam-spatial");
        CHECK(std::count(mism.begin(), mism.end(), 1) == 0);
    }
}

TEST_CASE("MSB embedding reaches the full 128 step") {
    std::mt19937_64 rng(33);
    const RgbImage in = oracle::random_image(64, 64, rng);
    const RgbImage out = embed_spatial(in, CameraId::from_text("msb"), {8, ModifierMode::Single});
    int max_red = 0;
    for (std::size_t i = 0; i < in.pixel_count(); ++i)
        max_red = std::max(max_red, std::abs(in.plane(Channel::Red).samples()[i] - out.plane(Channel::Red).samples()[i]));
    CHECK(max_red == 128);
}

TEST_CASE("spatial embedding is idempotent") {
    std::mt19937_64 rng(34);
    const CameraId id = CameraId::from_text("idem");
    for (int bit : {1, 4, 8}) {
        for (auto mode : {ModifierMode::Single, ModifierMode::XorDual}) {
            const RgbImage once = embed_spatial(oracle::random_image(31, 17, rng), id, {bit, mode});
            CHECK(embed_spatial(once, id, {bit, mode}) == once);
        }
    }
}

TEST_CASE("LSB embedding keeps PSNR above the analytic bound") {
    std::mt19937_64 rng(35);
    for (int i = 0; i < 10; ++i) {
        const RgbImage in = oracle::random_image(40 + i, 30, rng);
        const RgbImage out = embed_spatial(in, CameraId::from_text("bound"), {1, ModifierMode::Single});
        CHECK(mse(in, out) <= 1.0 / 3.0);
        CHECK(psnr(in, out) >= 52.9);
    }
}

TEST_CASE("PSNR falls with the substituted bit") {
    std::mt19937_64 rng(36);
    const RgbImage in = oracle::random_image(128, 96, rng);
    const CameraId id = CameraId::from_text("order");
    const double p1 = psnr(in, embed_spatial(in, id, {1, ModifierMode::Single}));
    const double p4 = psnr(in, embed_spatial(in, id, {4, ModifierMode::Single}));
    const double p8 = psnr(in, embed_spatial(in, id, {8, ModifierMode::Single}));
    CHECK(p1 > p4);
    CHECK(p4 > p8);
}

TEST_CASE("spatial embedding rejects bad input") {
    CHECK_THROWS_AS(embed_spatial(RgbImage(10, 15), CameraId::from_text("x"), {1, ModifierMode::Single}), Error);
    try {
        embed_spatial(RgbImage(159, 1), CameraId::from_text("x"), {1, ModifierMode::Single});
        FAIL("expected ImageTooSmall");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ImageTooSmall);
    }
    CHECK_NOTHROW(embed_spatial(RgbImage(160, 1), CameraId::from_text("x"), {1, ModifierMode::Single}));
    CHECK_THROWS_AS(embed_spatial(RgbImage(20, 20), CameraId::from_text("x"), {3, ModifierMode::Single}), Error);
}

TEST_CASE("custom roles route the mark to the chosen planes") {
    std::mt19937_64 rng(37);
    const RgbImage in = oracle::random_image(30, 20, rng);
    const ChannelRoles roles{Channel::Red, Channel::Blue, Channel::Green};
    const RgbImage out = embed_spatial(in, CameraId::from_text("roles"), {1, ModifierMode::Single}, roles);
    CHECK(out.plane(Channel::Red) == in.plane(Channel::Red));
    CHECK(verify(out, CameraId::from_text("roles"), ScenarioConfig::parse("s2", roles)).authentic);
}
