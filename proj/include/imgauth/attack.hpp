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
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "imgauth/crypto.hpp"
#include "imgauth/image.hpp"
#include "imgauth/rect.hpp"
#include "imgauth/scenario.hpp"
#include "imgauth/verifier.hpp"

namespace imgauth {

enum class AttackMode {
    None,         // identity; the clean reference row of a campaign
    Blackout,     // region set to (0,0,0)
    Constant,     // region set to (value, value, value)
    CopyFrom,     // region overwritten by an equally sized source rectangle
    ChannelSwap,  // two planes exchanged over the whole image
    Noise,        // region filled with seeded uniform random samples
};

const char* to_string(AttackMode mode) noexcept;

struct AttackSpec {
    AttackMode mode = AttackMode::Blackout;
    /// Exactly one of rect / zone names the region (ignored by None and
    /// ChannelSwap, which declare the whole image).
    std::optional<Rect> rect;
    int zone = 0;
    std::uint8_t value = 0;              // Constant
    int source_x = 0;                    // CopyFrom: top-left of the source
    int source_y = 0;
    std::pair<Channel, Channel> swap{Channel::Red, Channel::Blue};
    std::uint64_t seed = 0;              // Noise
    std::string name;                    // free-form label for reports

    /// Short human label, e.g. "blackout@zone1" or "noise@(10,20,4x4)".
    std::string label() const;
};

/// Quadrant `zone` of a width x height image: 1 upper-left, 2 upper-right,
/// 3 lower-right, 4 lower-left; each floor(w/2) x floor(h/2). Throws
/// RegionError for a zone outside 1..4.
Rect zone_rect(int width, int height, int zone);

/// The rectangle an attack may change: its rect or zone, or the whole image
/// for None and ChannelSwap. Throws RegionError when the attack does not fit.
Rect attack_region(const RgbImage& image, const AttackSpec& spec);

/// Deterministic in (image, spec). Throws RegionError for regions or copy
/// sources outside the image.
RgbImage apply_attack(const RgbImage& image, const AttackSpec& spec);

struct DetectionCell {
    std::string scenario;
    std::string attack;
    bool detected = false;  // verify() reported not authentic
    std::size_t mismatch_count = 0;
    std::size_t flagged_inside = 0;   // flagged cells overlapping the region
    std::size_t flagged_outside = 0;  // flagged cells clear of the region
    std::size_t region_cells = 0;     // map cells overlapping the region
};

struct DetectionReport {
    std::vector<DetectionCell> cells;

    std::string to_csv() const;
    nlohmann::json to_json() const;
};

/// Embeds `image` once per scenario, applies every attack to the stego
/// image and verifies. Rows are ordered scenario-major, attack-minor.
DetectionReport run_campaign(const RgbImage& image, const CameraId& camera_id,
                             const std::vector<ScenarioConfig>& scenarios, const std::vector<AttackSpec>& attacks,
                             double tolerance = kDefaultTolerance);

/// Campaign file contents; the image source is resolved by the caller.
struct CampaignConfig {
    std::string image;  // path, or "synthetic:scene" / "synthetic:A|B|C"
    std::string camera_id;
    std::vector<std::string> scenarios;
    std::vector<AttackSpec> attacks;
    double tolerance = kDefaultTolerance;
};

/// Throws InvalidArgument with the offending key on malformed input.
CampaignConfig parse_campaign(const nlohmann::json& doc);
AttackSpec parse_attack(const nlohmann::json& doc);

}  // namespace imgauth
