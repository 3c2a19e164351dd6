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

#include "imgauth/dct.hpp"
#include "oracles.hpp"

using namespace imgauth;

namespace {

SampleTile random_tile(std::mt19937_64& rng) {
    SampleTile t;
    for (auto& s : t) s = static_cast<std::uint8_t>(rng());
    return t;
}

}  // namespace

TEST_CASE("forward transform agrees with the definitional quadruple loop") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200; ++i) {
        const SampleTile t = random_tile(rng);
        oracle::Tile x;
        for (int k = 0; k < 64; ++k) x[k] = t[k];
        const DctBlock got = dct2_block(t);
        const oracle::Tile want = oracle::dct2(x);
        for (int k = 0; k < 64; ++k) REQUIRE(std::fabs(got[k] - want[k]) <= 1e-9);
    }
}

TEST_CASE("real inverse agrees with the definitional inverse") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(-300, 300);
    for (int i = 0; i < 200; ++i) {
        DctBlock c;
        oracle::Tile o;
        for (int k = 0; k < 64; ++k) o[k] = c[k] = u(rng);
        const RealTile got = idct2_real(c);
        const oracle::Tile want = oracle::idct2(o);
        for (int k = 0; k < 64; ++k) REQUIRE(std::fabs(got[k] - want[k]) <= 1e-9);
    }
}

TEST_CASE("constant tiles have only a DC term of 8v") {
    for (int v : {0, 1, 100, 255}) {
        SampleTile t;
        t.fill(static_cast<std::uint8_t>(v));
        const DctBlock c = dct2_block(t);
        CHECK(std::fabs(c[0] - 8.0 * v) <= 1e-9);
        for (int k = 1; k < 64; ++k) CHECK(std::fabs(c[k]) <= 1e-9);
    }
}

TEST_CASE("transform preserves energy") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
        const SampleTile t = random_tile(rng);
        const DctBlock c = dct2_block(t);
        double es = 0, ec = 0;
        for (int k = 0; k < 64; ++k) {
            es += static_cast<double>(t[k]) * t[k];
            ec += c[k] * c[k];
        }
        CHECK(std::fabs(es - ec) <= 1e-6);
    }
}

TEST_CASE("inverse rounds and clips") {
    DctBlock c{};
    c[0] = 8 * 100;
    for (auto s : idct2_block(c)) CHECK(s == 100);
    c[0] = 8 * 300;
    for (auto s : idct2_block(c)) CHECK(s == 255);
    c[0] = -8 * 5;
    for (auto s : idct2_block(c)) CHECK(s == 0);
    c[0] = 8 * 99.5;  // half rounds up
    for (auto s : idct2_block(c)) CHECK(s == 100);
}

TEST_CASE("forward then inverse reproduces integer tiles") {
    std::mt19937_64 rng(24);
    for (int i = 0; i < 200; ++i) {
        const SampleTile t = random_tile(rng);
        CHECK(idct2_block(dct2_block(t)) == t);
        const RealTile r = idct2_real(dct2_block(t));
        for (int k = 0; k < 64; ++k) REQUIRE(std::fabs(r[k] - t[k]) <= 1e-9);
    }
}

TEST_CASE("zero tile transforms to zero") {
    for (double c : dct2_block(SampleTile{})) CHECK(c == 0.0);
}

TEST_CASE("basis values and coefficient indexing") {
    CHECK(dct_basis_1d(0, 3) == doctest::Approx(std::sqrt(0.125)));
    CHECK(dct_basis_1d(1, 0) == doctest::Approx(0.5 * std::cos(M_PI / 16)));
    CHECK(coeff_index({1, 1}) == 0);
    CHECK(coeff_index({1, 2}) == 1);
    CHECK(coeff_index({3, 6}) == 21);
    CHECK(coeff_index({8, 8}) == 63);
}
