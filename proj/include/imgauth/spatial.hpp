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

#include "imgauth/crypto.hpp"
#include "imgauth/image.hpp"
#include "imgauth/scenario.hpp"

namespace imgauth {

/// Replaces bit `bit_index` (1 = LSB .. 8 = MSB) of `modified` with the
/// same bit of `modifier`.
std::uint8_t substitute_bit(std::uint8_t modified, std::uint8_t modifier, int bit_index);

/// Single: AES over the modifier plane. XorDual: AES over modifier XOR
/// unprocessed.
CipherPlane build_modifier(const RgbImage& image, const ChannelRoles& roles, ModifierMode mode,
                           const CipherKey& key);

/// Implants the photo ID, then writes the ciphered modifier's bit into the
/// same bit of every Modified-plane sample.
RgbImage embed_spatial(const RgbImage& image, const CameraId& camera_id, const SpatialScenario& scenario,
                       const ChannelRoles& roles = {});

}  // namespace imgauth
