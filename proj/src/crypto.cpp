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

#include "imgauth/crypto.hpp"

#include <algorithm>
#include <memory>

#include <openssl/evp.h>
#include <openssl/sha.h>

#include "imgauth/error.hpp"

namespace imgauth {
namespace {

struct CipherCtxDeleter {
    void operator()(EVP_CIPHER_CTX* ctx) const noexcept { EVP_CIPHER_CTX_free(ctx); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

CipherCtx make_ecb_context(const CipherKey& key) {
    CipherCtx ctx(EVP_CIPHER_CTX_new());
    if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_ecb(), nullptr, key.bytes.data(), nullptr) != 1) {
        throw Error(ErrorCode::InvalidArgument, "AES-128 initialisation failed");
    }
    EVP_CIPHER_CTX_set_padding(ctx.get(), 0);
    return ctx;
}

void ecb_encrypt(EVP_CIPHER_CTX* ctx, const std::uint8_t* in, std::uint8_t* out, int len) {
    int produced = 0;
    if (EVP_EncryptUpdate(ctx, out, &produced, in, len) != 1 || produced != len) {
        throw Error(ErrorCode::InvalidArgument, "AES-128 encryption failed");
    }
}

int hex_value(char ch) {
    if (ch >= '0' && ch <= '9') return ch - '0';
    if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
    if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
    return -1;
}

}  // namespace

CameraId CameraId::from_text(std::string_view text) {
    return from_bytes(std::vector<std::uint8_t>(text.begin(), text.end()));
}

CameraId CameraId::from_bytes(std::vector<std::uint8_t> bytes) {
    if (bytes.empty()) throw Error(ErrorCode::InvalidCameraId, "camera ID must not be empty");
    if (bytes.size() > kMaxLength) {
        throw Error(ErrorCode::InvalidCameraId, "camera ID longer than 256 bytes");
    }
    return CameraId(std::move(bytes));
}

std::string PhotoId::hex() const {
    static constexpr char kDigits[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(kBytes * 2);
    for (std::uint8_t b : digest) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0x0F]);
    }
    return out;
}

PhotoId PhotoId::from_hex(std::string_view hex) {
    if (hex.size() != kBytes * 2) {
        throw Error(ErrorCode::InvalidArgument, "photo ID must be 40 hex characters");
    }
    PhotoId id;
    for (std::size_t i = 0; i < kBytes; ++i) {
        const int hi = hex_value(hex[2 * i]);
        const int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw Error(ErrorCode::InvalidArgument, "photo ID contains non-hex characters");
        id.digest[i] = static_cast<std::uint8_t>(hi << 4 | lo);
    }
    return id;
}

PhotoId derive_photo_id(const CameraId& camera_id) {
    PhotoId id;
    SHA1(camera_id.bytes().data(), camera_id.bytes().size(), id.digest.data());
    return id;
}

CipherKey derive_cipher_key(const CameraId& camera_id) {
    std::array<std::uint8_t, SHA256_DIGEST_LENGTH> digest{};
    SHA256(camera_id.bytes().data(), camera_id.bytes().size(), digest.data());
    CipherKey key;
    std::copy_n(digest.begin(), key.bytes.size(), key.bytes.begin());
    return key;
}

std::array<std::uint8_t, 16> aes128_encrypt_block(const std::array<std::uint8_t, 16>& block,
                                                  const CipherKey& key) {
    auto ctx = make_ecb_context(key);
    std::array<std::uint8_t, 16> out{};
    ecb_encrypt(ctx.get(), block.data(), out.data(), 16);
    return out;
}

CipherPlane encrypt_plane(const ChannelPlane& plane, const CipherKey& key) {
    if (plane.empty()) throw Error(ErrorCode::DimensionError, "cannot encrypt an empty plane");

    const auto src = plane.samples();
    const std::size_t padded = (src.size() + 15) / 16 * 16;
    std::vector<std::uint8_t> buffer(padded, 0);
    std::copy(src.begin(), src.end(), buffer.begin());

    for (std::size_t block = 0; block < padded / 16; ++block) {
        std::uint8_t* p = buffer.data() + block * 16;
        for (int k = 0; k < 8; ++k) {
            p[15 - k] ^= static_cast<std::uint8_t>(static_cast<std::uint64_t>(block) >> (8 * k));
        }
    }

    auto ctx = make_ecb_context(key);
    std::vector<std::uint8_t> out(padded);
    ecb_encrypt(ctx.get(), buffer.data(), out.data(), static_cast<int>(padded));
    out.resize(src.size());
    return CipherPlane(ChannelPlane(plane.width(), plane.height(), std::move(out)));
}

}  // namespace imgauth
