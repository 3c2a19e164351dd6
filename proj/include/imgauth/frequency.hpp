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
#include <cstddef>

#include "imgauth/crypto.hpp"
#include "imgauth/dct.hpp"
#include "imgauth/image.hpp"
#include "imgauth/scenario.hpp"

namespace imgauth {

/// Target accuracy of the embedder: after embedding, every non-saturated
/// block's selected coefficient sits within this distance of the ciphered
/// modifier's coefficient.
inline constexpr double kResidualCap = 1e-6;

/// Copy of `modified` with the coefficient at `pos` taken from `modifier`.
DctBlock substitute_coeff(const DctBlock& modified, const DctBlock& modifier, CoeffPos pos);

/// Coefficient `pos` of block (brow, bcol) of the edge-replicated padding of
/// `plane`. Equal to dct2_block(pad_to_block_multiple(plane).block(...))[pos]
/// but computed directly from the in-extent samples; embedder and verifier
/// both use this, so their arithmetic is identical.
double block_coefficient(const ChannelPlane& plane, int brow, int bcol, CoeffPos pos);

struct FrequencyEmbedResult {
    RgbImage image;
    std::size_t blocks = 0;
    /// Blocks whose coefficient could not be brought within kResidualCap
    /// (every useful sample pinned at 0 or 255).
    std::size_t saturated_blocks = 0;
    double max_residual = 0.0;
};

/// Implants the photo ID, builds the ciphered modifier, then for every 8x8
/// block of the Modified plane substitutes the scenario coefficient with the
/// modifier's and returns to the sample domain.
///
/// The substituted block is realised as 8-bit samples by a repair pass:
/// clipped samples are pinned and the remaining ones absorb the deficit, then
/// after rounding a search over +/-1 sample adjustments steers the
/// coefficient back within kResidualCap. Blocks already within the cap are left untouched,
/// which makes embedding idempotent.
FrequencyEmbedResult embed_frequency_detailed(const RgbImage& image, const CameraId& camera_id,
                                              const FreqScenario& scenario, const ChannelRoles& roles = {});

RgbImage embed_frequency(const RgbImage& image, const CameraId& camera_id, const FreqScenario& scenario,
                         const ChannelRoles& roles = {});

}  // namespace imgauth
