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
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "imgauth/image.hpp"

namespace imgauth {

// Readers accept PNG, BMP and JPEG. Writers only produce lossless formats
// because any lossy re-encode destroys the fragile mark.

RgbImage load_image(const std::filesystem::path& path);
RgbImage decode_image(std::span<const std::uint8_t> bytes);

/// Throws InvalidArgument for lossy or unknown extensions, IoError on write
/// failure.
void save_image(const std::filesystem::path& path, const RgbImage& image);

/// `format` is ".png" or ".bmp".
std::vector<std::uint8_t> encode_image(const RgbImage& image, const std::string& format = ".png");

bool is_lossless_extension(const std::filesystem::path& path);

}  // namespace imgauth
