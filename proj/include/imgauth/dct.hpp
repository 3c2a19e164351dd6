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

#include <array>

#include "imgauth/image.hpp"
#include "imgauth/scenario.hpp"

namespace imgauth {

/// Orthonormal 2-D DCT-II coefficients of one 8x8 tile, row-major with the
/// vertical frequency as the row index.
using DctBlock = std::array<double, kBlockSize * kBlockSize>;
using RealTile = std::array<double, kBlockSize * kBlockSize>;

DctBlock dct2_block(const SampleTile& tile);
DctBlock dct2_block(const RealTile& tile);

RealTile idct2_real(const DctBlock& block);

/// Inverse transform, round half up, clip to [0, 255].
SampleTile idct2_block(const DctBlock& block);

/// 1-D orthonormal DCT-II basis value: alpha(k) * cos((2n+1) k pi / 16).
double dct_basis_1d(int k, int n) noexcept;

/// 0-based index of a 1-based coefficient position.
inline int coeff_index(CoeffPos pos) noexcept { return (pos.row - 1) * kBlockSize + (pos.col - 1); }

}  // namespace imgauth
