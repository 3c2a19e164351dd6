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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "imgauth/crypto.hpp"
#include "imgauth/image.hpp"
#include "imgauth/rect.hpp"
#include "imgauth/scenario.hpp"

namespace imgauth {

/// Pixels needed to hold the photo-ID reserve (one digest bit per sample).
inline constexpr std::size_t kMinPixels = PhotoId::kBits;

/// Absolute coefficient tolerance for frequency scenarios. Frozen from the
/// calibration procedure in calibration.hpp (1.5x the worst clean-image
/// deviation, rounded up); tests re-run the calibration against it.
inline constexpr double kDefaultTolerance = 1.5e-6;

/// Writes the 160 digest bits (MSB of byte 0 first) into the LSBs of the
/// first 160 samples of `unprocessed`, row-major.
RgbImage implant_photo_id(const RgbImage& image, const PhotoId& photo_id, Channel unprocessed = Channel::Green);
PhotoId extract_photo_id(const RgbImage& image, Channel unprocessed = Channel::Green);

enum class Granularity { PerPixel, PerBlock };

/// Boolean mismatch grid over pixels or 8x8 blocks.
struct TamperMap {
    Granularity granularity = Granularity::PerPixel;
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> cells;

    TamperMap() = default;
    TamperMap(Granularity g, int rows, int cols);

    bool at(int row, int col) const { return cells[static_cast<std::size_t>(row) * cols + col] != 0; }
    void set(int row, int col, bool v = true) { cells[static_cast<std::size_t>(row) * cols + col] = v ? 1 : 0; }
    std::size_t count() const noexcept;
    std::size_t size() const noexcept { return cells.size(); }
};

struct VerificationReport {
    bool authentic = false;
    std::optional<PhotoId> photo_id_found;
    bool photo_id_match = false;
    ScenarioConfig scenario;
    std::size_t mismatch_count = 0;
    double mismatch_ratio = 0.0;
    TamperMap tamper_map;
    /// Flagged blocks whose carrier samples are all pinned at 0 or 255.
    std::size_t saturated_blocks = 0;
    double tolerance = 0.0;
    int image_width = 0;
    int image_height = 0;
    std::vector<std::string> coverage_notes;
};

/// Re-derives the ciphered modifier from `camera_id`, checks the scenario
/// bit (per pixel) or coefficient (per block, within `tolerance`) of the
/// Modified plane, and compares the implanted photo ID. A photo-ID mismatch
/// is reported, not thrown.
VerificationReport verify(const RgbImage& image, const CameraId& camera_id, const ScenarioConfig& scenario,
                          double tolerance = kDefaultTolerance);

/// Bounding rectangle of every 4-connected group of flagged cells, in map
/// coordinates, ordered by first cell in row-major order.
std::vector<Rect> localize(const TamperMap& map);

/// Rectangles in pixel coordinates (block rectangles scaled and cropped).
std::vector<Rect> localize_pixels(const VerificationReport& report);

/// {authentic, photo_id, photo_id_match, scenario, mismatch_count,
///  mismatch_ratio, rects:[{x,y,w,h}], saturated_blocks, ...}
nlohmann::json to_json(const VerificationReport& report, std::size_t max_rects = 1024);

}  // namespace imgauth
