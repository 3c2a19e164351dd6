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

#include "imgauth/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "imgauth/error.hpp"
#include "imgauth/frequency.hpp"
#include "imgauth/spatial.hpp"

namespace imgauth {
namespace {

void require_reserve(const RgbImage& image) {
    if (image.pixel_count() < kMinPixels) {
        throw Error(ErrorCode::ImageTooSmall, "image has " + std::to_string(image.pixel_count()) +
                                                  " pixels; at least 160 are needed");
    }
}

bool block_pinned(const ChannelPlane& plane, int brow, int bcol) {
    const int r1 = std::min(plane.height(), (brow + 1) * kBlockSize);
    const int c1 = std::min(plane.width(), (bcol + 1) * kBlockSize);
    for (int r = brow * kBlockSize; r < r1; ++r) {
        for (int c = bcol * kBlockSize; c < c1; ++c) {
            const auto v = plane.at(r, c);
            if (v != 0 && v != 255) return false;
        }
    }
    return true;
}

}  // namespace

RgbImage implant_photo_id(const RgbImage& image, const PhotoId& photo_id, Channel unprocessed) {
    require_reserve(image);
    RgbImage out = image;
    auto samples = out.plane(unprocessed).samples();
    for (std::size_t bit = 0; bit < PhotoId::kBits; ++bit) {
        const auto value = static_cast<std::uint8_t>((photo_id.digest[bit / 8] >> (7 - bit % 8)) & 1u);
        samples[bit] = static_cast<std::uint8_t>((samples[bit] & 0xFE) | value);
    }
    return out;
}

PhotoId extract_photo_id(const RgbImage& image, Channel unprocessed) {
    require_reserve(image);
    PhotoId id;
    const auto samples = image.plane(unprocessed).samples();
    for (std::size_t bit = 0; bit < PhotoId::kBits; ++bit) {
        id.digest[bit / 8] = static_cast<std::uint8_t>(id.digest[bit / 8] | (samples[bit] & 1u) << (7 - bit % 8));
    }
    return id;
}

TamperMap::TamperMap(Granularity g, int r, int c)
    : granularity(g), rows(r), cols(c), cells(static_cast<std::size_t>(r) * c, 0) {}

std::size_t TamperMap::count() const noexcept {
    return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), std::uint8_t{1}));
}

VerificationReport verify(const RgbImage& image, const CameraId& camera_id, const ScenarioConfig& scenario,
                          double tolerance) {
    require_reserve(image);
    if (!scenario.roles.valid()) throw Error(ErrorCode::InvalidScenario, "channel roles must be distinct");
    if (!(tolerance >= 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be non-negative");

    const ChannelRoles& roles = scenario.roles;
    VerificationReport report;
    report.scenario = scenario;
    report.image_width = image.width();
    report.image_height = image.height();
    report.photo_id_found = extract_photo_id(image, roles.unprocessed);
    report.photo_id_match = *report.photo_id_found == derive_photo_id(camera_id);

    const CipherPlane cipher = build_modifier(image, roles, scenario.mode(), derive_cipher_key(camera_id));
    const ChannelPlane& carrier = image.plane(roles.modified);

    if (const auto* s = std::get_if<SpatialScenario>(&scenario.recipe)) {
        if (s->bit_index < 1 || s->bit_index > 8) throw Error(ErrorCode::InvalidScenario, "bit index must be in 1..8");
        const auto mask = static_cast<std::uint8_t>(1u << (s->bit_index - 1));
        report.tamper_map = TamperMap(Granularity::PerPixel, image.height(), image.width());
        const auto got = carrier.samples();
        const auto want = cipher.samples();
        for (std::size_t i = 0; i < got.size(); ++i) {
            report.tamper_map.cells[i] = ((got[i] ^ want[i]) & mask) ? 1 : 0;
        }
        if (s->mode == ModifierMode::Single) {
            report.coverage_notes.push_back(std::string("changes confined to the ") + to_string(roles.unprocessed) +
                                            " plane outside the photo-ID reserve are not covered");
        }
    } else {
        const auto& f = std::get<FreqScenario>(scenario.recipe);
        if (!is_supported_position(f.pos)) throw Error(ErrorCode::InvalidScenario, "unsupported coefficient position");
        const int block_rows = (image.height() + kBlockSize - 1) / kBlockSize;
        const int block_cols = (image.width() + kBlockSize - 1) / kBlockSize;
        report.tamper_map = TamperMap(Granularity::PerBlock, block_rows, block_cols);
        report.tolerance = tolerance;
        for (int br = 0; br < block_rows; ++br) {
            for (int bc = 0; bc < block_cols; ++bc) {
                const double got = block_coefficient(carrier, br, bc, f.pos);
                const double want = block_coefficient(cipher, br, bc, f.pos);
                if (std::abs(got - want) > tolerance) {
                    report.tamper_map.set(br, bc);
                    if (block_pinned(carrier, br, bc)) ++report.saturated_blocks;
                }
            }
        }
        if (f.mode == ModifierMode::Single) {
            report.coverage_notes.push_back(std::string("changes confined to the ") + to_string(roles.unprocessed) +
                                            " plane outside the photo-ID reserve are not covered");
        }
        report.coverage_notes.push_back("coefficient perturbations within the tolerance are not detectable");
    }

    report.mismatch_count = report.tamper_map.count();
    report.mismatch_ratio = report.tamper_map.size() == 0
                                ? 0.0
                                : static_cast<double>(report.mismatch_count) / static_cast<double>(report.tamper_map.size());
    report.authentic = report.photo_id_match && report.mismatch_count == 0;
    return report;
}

std::vector<Rect> localize(const TamperMap& map) {
    std::vector<Rect> rects;
    std::vector<std::uint8_t> seen(map.cells.size(), 0);
    std::vector<std::pair<int, int>> stack;

    for (int r = 0; r < map.rows; ++r) {
        for (int c = 0; c < map.cols; ++c) {
            const std::size_t idx = static_cast<std::size_t>(r) * map.cols + c;
            if (!map.cells[idx] || seen[idx]) continue;

            int min_r = r, max_r = r, min_c = c, max_c = c;
            seen[idx] = 1;
            stack.assign(1, {r, c});
            while (!stack.empty()) {
                const auto [cr, cc] = stack.back();
                stack.pop_back();
                min_r = std::min(min_r, cr);
                max_r = std::max(max_r, cr);
                min_c = std::min(min_c, cc);
                max_c = std::max(max_c, cc);
                constexpr int dr[] = {-1, 1, 0, 0};
                constexpr int dc[] = {0, 0, -1, 1};
                for (int k = 0; k < 4; ++k) {
                    const int nr = cr + dr[k];
                    const int nc = cc + dc[k];
                    if (nr < 0 || nc < 0 || nr >= map.rows || nc >= map.cols) continue;
                    const std::size_t n = static_cast<std::size_t>(nr) * map.cols + nc;
                    if (map.cells[n] && !seen[n]) {
                        seen[n] = 1;
                        stack.emplace_back(nr, nc);
                    }
                }
            }
            rects.push_back({min_c, min_r, max_c - min_c + 1, max_r - min_r + 1});
        }
    }
    return rects;
}

std::vector<Rect> localize_pixels(const VerificationReport& report) {
    std::vector<Rect> rects = localize(report.tamper_map);
    if (report.tamper_map.granularity == Granularity::PerBlock) {
        for (Rect& r : rects) {
            r.x *= kBlockSize;
            r.y *= kBlockSize;
            r.w = std::min(r.w * kBlockSize, report.image_width - r.x);
            r.h = std::min(r.h * kBlockSize, report.image_height - r.y);
        }
    }
    return rects;
}

nlohmann::json to_json(const VerificationReport& report, std::size_t max_rects) {
    nlohmann::json rects = nlohmann::json::array();
    const auto all = localize_pixels(report);
    for (std::size_t i = 0; i < all.size() && i < max_rects; ++i) {
        rects.push_back({{"x", all[i].x}, {"y", all[i].y}, {"w", all[i].w}, {"h", all[i].h}});
    }
    nlohmann::json j = {
        {"authentic", report.authentic},
        {"photo_id", report.photo_id_found ? nlohmann::json(report.photo_id_found->hex()) : nlohmann::json(nullptr)},
        {"photo_id_match", report.photo_id_match},
        {"scenario", report.scenario.name},
        {"granularity", report.tamper_map.granularity == Granularity::PerPixel ? "pixel" : "block"},
        {"mismatch_count", report.mismatch_count},
        {"mismatch_ratio", report.mismatch_ratio},
        {"rects", std::move(rects)},
        {"rects_truncated", all.size() > max_rects},
        {"saturated_blocks", report.saturated_blocks},
        {"coverage_notes", report.coverage_notes},
    };
    if (!report.scenario.is_spatial()) j["tolerance"] = report.tolerance;
    return j;
}

}  // namespace imgauth
