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

#include <random>

#include "imgauth/embed.hpp"
#include "imgauth/error.hpp"
#include "imgauth/testimages.hpp"
#include "imgauth/verifier.hpp"
#include "oracles.hpp"

using namespace imgauth;

TEST_CASE("photo ID implant and extract round trip") {
    std::mt19937_64 rng(51);
    const RgbImage in = oracle::random_image(20, 12, rng);
    const PhotoId id = derive_photo_id(CameraId::from_text("acef"));
    const RgbImage out = implant_photo_id(in, id);
    CHECK(extract_photo_id(out) == id);
    int changed = 0;
    for (std::size_t i = 0; i < in.pixel_count(); ++i) {
        const int a = in.plane(Channel::Green).samples()[i];
        const int b = out.plane(Channel::Green).samples()[i];
        CHECK(std::abs(a - b) <= 1);
        if (a != b) {
            CHECK(i < PhotoId::kBits);
            ++changed;
        }
    }
    CHECK(changed <= 160);
    CHECK(out.plane(Channel::Red) == in.plane(Channel::Red));
    CHECK(out.plane(Channel::Blue) == in.plane(Channel::Blue));
}

TEST_CASE("zero digest into a saturated plane") {
    RgbImage img(16, 16);
    for (auto& s : img.plane(Channel::Green).samples()) s = 0xFF;
    const RgbImage out = implant_photo_id(img, PhotoId{});
    for (std::size_t i = 0; i < img.pixel_count(); ++i)
        CHECK(out.plane(Channel::Green).samples()[i] == (i < 160 ? 0xFE : 0xFF));
}

TEST_CASE("extract reads a zeroed reserve as an all-zero digest") {
    std::mt19937_64 rng(52);
    RgbImage img = oracle::random_image(40, 10, rng);
    for (std::size_t i = 0; i < 160; ++i) img.plane(Channel::Green).samples()[i] = 0;
    const RgbImage copy = img;
    CHECK(extract_photo_id(img) == PhotoId{});
    CHECK(img == copy);
    CHECK_THROWS_AS(extract_photo_id(RgbImage(10, 10)), Error);
    CHECK_THROWS_AS(implant_photo_id(RgbImage(10, 10), PhotoId{}), Error);
}

TEST_CASE("every scenario verifies clean output as authentic") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 5; ++trial) {
        const RgbImage in = make_test_image(30 + trial * 7, 22 + trial * 3, TestPattern::PhotoLike, rng());
        const std::string cam = oracle::random_camera_id(rng);
        for (const auto& name : all_scenario_names()) {
            const auto sc = ScenarioConfig::parse(name);
            const auto rep = verify(embed(in, CameraId::from_text(cam), sc), CameraId::from_text(cam), sc);
            CHECK_MESSAGE(rep.authentic, name);
            CHECK(rep.mismatch_count == 0);
            CHECK(rep.photo_id_match);
            CHECK(localize(rep.tamper_map).empty());
        }
    }
}

TEST_CASE("one flipped LSB is localised to its pixel") {
    const RgbImage in = make_test_image(64, 48, TestPattern::PhotoLike, 7);
    const CameraId id = CameraId::from_text("acef");
    const auto s2 = ScenarioConfig::parse("s2");
    RgbImage stego = embed(in, id, s2);
    stego.plane(Channel::Red).at(10, 10) ^= 1;
    const auto rep = verify(stego, id, s2);
    CHECK_FALSE(rep.authentic);
    CHECK(rep.mismatch_count == 1);
    CHECK(rep.tamper_map.at(10, 10));
    CHECK(rep.tamper_map.granularity == Granularity::PerPixel);
    const auto rects = localize(rep.tamper_map);
    REQUIRE(rects.size() == 1);
    CHECK(rects[0] == Rect{10, 10, 1, 1});
}

TEST_CASE("spatial sensitivity is pixel exact on the carrier bit") {
    std::mt19937_64 rng(54);
    const CameraId id = CameraId::from_text("sens");
    for (const char* name : {"s1", "s2", "s3", "s4"}) {
        const auto sc = ScenarioConfig::parse(name);
        const int bit = std::get<SpatialScenario>(sc.recipe).bit_index;
        const RgbImage stego = embed(oracle::random_image(33, 21, rng), id, sc);
        for (int k = 0; k < 20; ++k) {
            RgbImage t = stego;
            const int r = static_cast<int>(rng() % 21), c = static_cast<int>(rng() % 33);
            t.plane(Channel::Red).at(r, c) ^= static_cast<std::uint8_t>(1 << (bit - 1));
            const auto rep = verify(t, id, sc);
            CHECK(rep.mismatch_count == 1);
            CHECK(rep.tamper_map.at(r, c));
        }
    }
}

TEST_CASE("blackout after f4 flags the overlapping block") {
    const RgbImage in = make_test_image(64, 48, TestPattern::PhotoLike, 8);
    const CameraId id = CameraId::from_text("acef");
    const auto f4 = ScenarioConfig::parse("f4");
    RgbImage stego = embed(in, id, f4);
    for (int r = 20; r < 24; ++r)
        for (int c = 30; c < 34; ++c) stego.set_pixel(r, c, {0, 0, 0});
    const auto rep = verify(stego, id, f4);
    CHECK_FALSE(rep.authentic);
    CHECK(rep.tamper_map.granularity == Granularity::PerBlock);
    CHECK(rep.tamper_map.rows == 6);
    CHECK(rep.tamper_map.cols == 8);
    CHECK(rep.tamper_map.at(2, 3));
    const auto rects = localize_pixels(rep);
    bool covered = false;
    for (const Rect& r : rects) covered |= r.contains(20, 30) && r.contains(23, 33);
    CHECK(covered);
}

TEST_CASE("wrong camera ID mismatches about half the bits") {
    std::mt19937_64 rng(55);
    for (const char* name : {"s1", "s2", "s3", "s4"}) {
        const auto sc = ScenarioConfig::parse(name);
        const RgbImage stego = embed(make_test_image(128, 96, TestPattern::PhotoLike, rng()), CameraId::from_text("right"), sc);
        const auto rep = verify(stego, CameraId::from_text("wrong"), sc);
        CHECK_FALSE(rep.authentic);
        CHECK_FALSE(rep.photo_id_match);
        CHECK(rep.mismatch_ratio == doctest::Approx(0.5).epsilon(0.1));
    }
}

TEST_CASE("photo ID mismatch alone is reported, not thrown") {
    const auto sc = ScenarioConfig::parse("s2");
    const CameraId id = CameraId::from_text("pid");
    RgbImage stego = embed(make_test_image(40, 30, TestPattern::Gradient, 1), id, sc);
    stego.plane(Channel::Green).samples()[0] ^= 1;
    const auto rep = verify(stego, id, sc);
    CHECK_FALSE(rep.authentic);
    CHECK_FALSE(rep.photo_id_match);
    CHECK(rep.mismatch_count == 0);
}

TEST_CASE("localize groups 4-connected cells") {
    TamperMap empty(Granularity::PerPixel, 6, 6);
    CHECK(localize(empty).empty());

    TamperMap one(Granularity::PerPixel, 8, 8);
    one.set(3, 5);
    REQUIRE(localize(one).size() == 1);
    CHECK(localize(one)[0] == Rect{5, 3, 1, 1});

    TamperMap two(Granularity::PerPixel, 10, 10);
    for (int r : {1, 2})
        for (int c : {1, 2}) two.set(r, c);
    for (int r : {6, 7})
        for (int c : {5, 6}) two.set(r, c);
    const auto rects = localize(two);
    REQUIRE(rects.size() == 2);
    CHECK(rects[0] == Rect{1, 1, 2, 2});
    CHECK(rects[1] == Rect{5, 6, 2, 2});

    TamperMap diag(Granularity::PerPixel, 4, 4);
    diag.set(0, 0);
    diag.set(1, 1);
    CHECK(localize(diag).size() == 2);
}

TEST_CASE("report JSON carries the documented keys and no camera ID") {
    const auto sc = ScenarioConfig::parse("f4");
    const CameraId id = CameraId::from_text("secret-camera-7");
    const auto rep = verify(embed(make_test_image(40, 30, TestPattern::Gradient, 2), id, sc), id, sc);
    const auto j = to_json(rep);
    for (const char* key : {"authentic", "photo_id", "scenario", "mismatch_count", "mismatch_ratio", "rects",
                            "saturated_blocks"})
        CHECK(j.contains(key));
    CHECK(j["photo_id"] == derive_photo_id(id).hex());
    CHECK(j.dump().find("secret-camera-7") == std::string::npos);
}

TEST_CASE("verify validates its arguments") {
    const auto sc = ScenarioConfig::parse("f1");
    CHECK_THROWS_AS(verify(RgbImage(10, 10), CameraId::from_text("x"), sc), Error);
    CHECK_THROWS_AS(verify(RgbImage(20, 20), CameraId::from_text("x"), sc, -1.0), Error);
    CHECK_THROWS_AS(ScenarioConfig::parse("s9"), Error);
}
