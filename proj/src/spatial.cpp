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

#include "imgauth/spatial.hpp"

#include "imgauth/error.hpp"
#include "imgauth/verifier.hpp"

namespace imgauth {

std::uint8_t substitute_bit(std::uint8_t modified, std::uint8_t modifier, int bit_index) {
    if (bit_index < 1 || bit_index > 8) {
        throw Error(ErrorCode::InvalidScenario, "bit index must be in 1..8");
    }
    const auto mask = static_cast<std::uint8_t>(1u << (bit_index - 1));
    return static_cast<std::uint8_t>((modified & ~mask) | (modifier & mask));
}

CipherPlane build_modifier(const RgbImage& image, const ChannelRoles& roles, ModifierMode mode,
                           const CipherKey& key) {
    if (!roles.valid()) throw Error(ErrorCode::InvalidScenario, "channel roles must be distinct");
    if (mode == ModifierMode::Single) return encrypt_plane(image.plane(roles.modifier), key);

    ChannelPlane mixed = image.plane(roles.modifier);
    const auto other = image.plane(roles.unprocessed).samples();
    auto dst = mixed.samples();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= other[i];
    return encrypt_plane(mixed, key);
}

RgbImage embed_spatial(const RgbImage& image, const CameraId& camera_id, const SpatialScenario& scenario,
                       const ChannelRoles& roles) {
    if (scenario.bit_index != 1 && scenario.bit_index != 4 && scenario.bit_index != 8) {
        throw Error(ErrorCode::InvalidScenario, "spatial scenarios use bit 1, 4 or 8");
    }
    RgbImage out = implant_photo_id(image, derive_photo_id(camera_id), roles.unprocessed);
    const CipherPlane cipher = build_modifier(out, roles, scenario.mode, derive_cipher_key(camera_id));

    auto carrier = out.plane(roles.modified).samples();
    const auto bits = cipher.samples();
    for (std::size_t i = 0; i < carrier.size(); ++i) {
        carrier[i] = substitute_bit(carrier[i], bits[i], scenario.bit_index);
    }
    return out;
}

}  // namespace imgauth
