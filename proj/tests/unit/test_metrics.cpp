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

#include <cmath>
#include <random>

#include "imgauth/error.hpp"
#include "imgauth/metrics.hpp"
#include "oracles.hpp"

using namespace imgauth;

TEST_CASE("identity gives the ideal values") {
    std::mt19937_64 rng(61);
    const RgbImage x = oracle::random_image(17, 11, rng);
    const QualityReport q = assess_quality(x, x);
    CHECK(q.joint.mae == 0.0);
    CHECK(q.joint.mse == 0.0);
    CHECK(std::isinf(q.joint.psnr));
    CHECK(q.joint.ssim == 1.0);
    CHECK(q.joint.uiqi == 1.0);
}

TEST_CASE("constant images compare equal") {
    RgbImage x(8, 8);
    for (auto c : {Channel::Red, Channel::Green, Channel::Blue})
        for (auto& s : x.plane(c).samples()) s = 77;
    CHECK(ssim(x, x) == 1.0);
    CHECK(uiqi(x, x) == 1.0);
}

TEST_CASE("unit offset") {
    std::mt19937_64 rng(62);
    RgbImage x = oracle::random_image(20, 20, rng);
    RgbImage v = x;
    for (auto c : {Channel::Red, Channel::Green, Channel::Blue}) {
        for (auto& s : x.plane(c).samples()) s = static_cast<std::uint8_t>(s % 255);
        v.plane(c) = x.plane(c);
        for (auto& s : v.plane(c).samples()) s = static_cast<std::uint8_t>(s + 1);
    }
    CHECK(mae(x, v) == 1.0);
    CHECK(mse(x, v) == 1.0);
    CHECK(psnr(x, v) == doctest::Approx(48.1308).epsilon(1e-5));
    CHECK(psnr(x, v) == doctest::Approx(10 * std::log10(65025.0)));
}

TEST_CASE("negative correlation gives negative UIQI") {
    ChannelPlane x(16, 1), v(16, 1);
    for (int i = 0; i < 16; ++i) {
        x.at(0, i) = static_cast<std::uint8_t>(i * 10);
        v.at(0, i) = static_cast<std::uint8_t>(255 - i * 10);
    }
    CHECK(uiqi(x, v) < 0);
    CHECK(ssim(x, v) < 0);
}

TEST_CASE("zero variance UIQI rules") {
    ChannelPlane a(4, 4, 10), b(4, 4, 20), c(4, 4, 10);
    CHECK(uiqi(a, c) == 1.0);
    CHECK(uiqi(a, b) == doctest::Approx(2.0 * 10 * 20 / (100.0 + 400.0)));
    ChannelPlane z(4, 4, 0);
    CHECK(uiqi(z, z) == 1.0);
    CHECK(std::isfinite(uiqi(z, a)));
}

TEST_CASE("random pairs agree with the brute-force oracle") {
    std::mt19937_64 rng(63);
    for (int i = 0; i < 100; ++i) {
        const int w = 1 + static_cast<int>(rng() % 30);
        const int h = 1 + static_cast<int>(rng() % 30);
        const RgbImage x = oracle::random_image(w, h, rng);
        const RgbImage v = oracle::random_image(w, h, rng);
        const auto o = oracle::metrics(x, v);
        const auto q = assess_quality(x, v).joint;
        CHECK(std::fabs(q.mae - o.mae) <= 1e-9);
        CHECK(std::fabs(q.mse - o.mse) <= 1e-9);
        CHECK(std::fabs(q.psnr - o.psnr) <= 1e-9);
        CHECK(std::fabs(q.ssim - o.ssim) <= 1e-9);
        CHECK(std::fabs(q.uiqi - o.uiqi) <= 1e-9);
    }
}

TEST_CASE("properties on random pairs") {
    std::mt19937_64 rng(64);
    for (int i = 0; i < 100; ++i) {
        const RgbImage x = oracle::random_image(12, 9, rng);
        RgbImage v = x;
        // Perturb a random subset so correlation spans the full range.
        for (auto c : {Channel::Red, Channel::Green, Channel::Blue})
            for (auto& s : v.plane(c).samples())
                if (rng() % 3 == 0) s = static_cast<std::uint8_t>(rng());
        CHECK(mae(x, v) == mae(v, x));
        CHECK(mse(x, v) == mse(v, x));
        CHECK(psnr(x, v) == psnr(v, x));
        CHECK(mae(x, v) * mae(x, v) <= mse(x, v) + 1e-12);
        const double s = ssim(x, v), u = uiqi(x, v);
        CHECK(s >= -1.0);
        CHECK(s <= 1.0);
        CHECK(u >= -1.0);
        CHECK(u <= 1.0);
    }
}

TEST_CASE("per-channel breakdown") {
    std::mt19937_64 rng(65);
    const RgbImage x = oracle::random_image(10, 10, rng);
    const RgbImage v = oracle::random_image(10, 10, rng);
    const QualityReport q = assess_quality(x, v);
    double mse_sum = 0;
    for (int c = 0; c < 3; ++c) {
        const auto ch = static_cast<Channel>(c);
        CHECK(q.channel[c].mse == mse(x.plane(ch), v.plane(ch)));
        CHECK(q.channel[c].ssim == doctest::Approx(oracle::plane_ssim(x.plane(ch), v.plane(ch))));
        mse_sum += q.channel[c].mse;
    }
    CHECK(q.joint.mse == doctest::Approx(mse_sum / 3));
}

TEST_CASE("shape mismatch is a DimensionError") {
    try {
        mse(RgbImage(4, 4), RgbImage(4, 5));
        FAIL("expected DimensionError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionError);
    }
    CHECK_THROWS_AS(ssim(ChannelPlane(3, 3), ChannelPlane(3, 2)), Error);
}

TEST_CASE("CSV and JSON serialisation") {
    CHECK(csv_header() == "mae,mse,psnr,ssim,uiqi");
    std::mt19937_64 rng(66);
    const RgbImage x = oracle::random_image(10, 10, rng);
    const auto j = to_json(assess_quality(x, x));
    CHECK(j.contains("joint"));
    CHECK(csv_fields(MetricSet{1, 2, 3, 0.5, 0.25}).find(',') != std::string::npos);
}
