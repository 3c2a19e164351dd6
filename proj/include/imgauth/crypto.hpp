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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "imgauth/image.hpp"

namespace imgauth {

/// Secret device identifier. Text IDs are used as their raw UTF-8 bytes.
class CameraId {
public:
    static constexpr std::size_t kMaxLength = 256;

    static CameraId from_text(std::string_view text);
    static CameraId from_bytes(std::vector<std::uint8_t> bytes);

    const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }
    std::string text() const { return {bytes_.begin(), bytes_.end()}; }

    bool operator==(const CameraId&) const = default;

private:
    explicit CameraId(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}
    std::vector<std::uint8_t> bytes_;
};

/// 160-bit public identifier implanted in every stego image.
struct PhotoId {
    static constexpr std::size_t kBytes = 20;
    static constexpr std::size_t kBits = kBytes * 8;

    std::array<std::uint8_t, kBytes> digest{};

    /// 40 uppercase hex characters.
    std::string hex() const;
    static PhotoId from_hex(std::string_view hex);

    bool operator==(const PhotoId&) const = default;
    auto operator<=>(const PhotoId&) const = default;
};

struct CipherKey {
    std::array<std::uint8_t, 16> bytes{};
    bool operator==(const CipherKey&) const = default;
};

/// Plane of ciphered bytes; same shape as the plane it was derived from.
class CipherPlane : public ChannelPlane {
public:
    CipherPlane() = default;
    explicit CipherPlane(ChannelPlane plane) : ChannelPlane(std::move(plane)) {}
};

PhotoId derive_photo_id(const CameraId& camera_id);

/// First 128 bits of SHA-256 over the camera-ID bytes.
CipherKey derive_cipher_key(const CameraId& camera_id);

/// Deterministic AES-128 over the row-major samples: zero-pad to a multiple
/// of 16, encrypt every 16-byte block independently, truncate back.
///
/// Block i is XORed with its big-endian index (in the last 8 bytes) before
/// encryption so identical plaintext runs at different positions do not
/// produce identical ciphertext. Block 0 is therefore plain AES-ECB.
CipherPlane encrypt_plane(const ChannelPlane& plane, const CipherKey& key);

/// Raw AES-128 single-block primitive, exposed for conformance checks.
std::array<std::uint8_t, 16> aes128_encrypt_block(const std::array<std::uint8_t, 16>& block,
                                                  const CipherKey& key);

}  // namespace imgauth
