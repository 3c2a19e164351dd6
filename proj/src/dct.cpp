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

#include "imgauth/dct.hpp"

#include <cmath>
#include <numbers>

namespace imgauth {
namespace {

using Matrix8 = std::array<double, 64>;

const Matrix8& basis_matrix() {
    static const Matrix8 m = [] {
        Matrix8 a{};
        for (int k = 0; k < kBlockSize; ++k) {
            const double alpha = k == 0 ? std::sqrt(1.0 / kBlockSize) : std::sqrt(2.0 / kBlockSize);
            for (int n = 0; n < kBlockSize; ++n) {
                a[k * kBlockSize + n] = alpha * std::cos((2 * n + 1) * k * std::numbers::pi / (2.0 * kBlockSize));
            }
        }
        return a;
    }();
    return m;
}

// out = A * in * A^T (forward) or A^T * in * A (inverse).
Matrix8 separable(const Matrix8& in, bool inverse) {
    const Matrix8& a = basis_matrix();
    Matrix8 tmp{};
    Matrix8 out{};
    for (int r = 0; r < kBlockSize; ++r) {
        for (int c = 0; c < kBlockSize; ++c) {
            double s = 0.0;
            for (int k = 0; k < kBlockSize; ++k) {
                s += (inverse ? a[k * kBlockSize + r] : a[r * kBlockSize + k]) * in[k * kBlockSize + c];
            }
            tmp[r * kBlockSize + c] = s;
        }
    }
    for (int r = 0; r < kBlockSize; ++r) {
        for (int c = 0; c < kBlockSize; ++c) {
            double s = 0.0;
            for (int k = 0; k < kBlockSize; ++k) {
                s += tmp[r * kBlockSize + k] * (inverse ? a[k * kBlockSize + c] : a[c * kBlockSize + k]);
            }
            out[r * kBlockSize + c] = s;
        }
    }
    return out;
}

}  // namespace

double dct_basis_1d(int k, int n) noexcept { return basis_matrix()[k * kBlockSize + n]; }

DctBlock dct2_block(const RealTile& tile) { return separable(tile, false); }

DctBlock dct2_block(const SampleTile& tile) {
    RealTile real{};
    for (std::size_t i = 0; i < tile.size(); ++i) real[i] = tile[i];
    return separable(real, false);
}

RealTile idct2_real(const DctBlock& block) { return separable(block, true); }

SampleTile idct2_block(const DctBlock& block) {
    const RealTile real = idct2_real(block);
    SampleTile out{};
    for (std::size_t i = 0; i < real.size(); ++i) {
        const double v = std::floor(real[i] + 0.5);
        out[i] = static_cast<std::uint8_t>(v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v));
    }
    return out;
}

}  // namespace imgauth
