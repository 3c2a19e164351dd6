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

#include "imgauth/attack.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <random>

#include "imgauth/embed.hpp"
#include "imgauth/error.hpp"

namespace imgauth {
namespace {

bool fits(const Rect& r, int width, int height) {
    return r.w > 0 && r.h > 0 && r.x >= 0 && r.y >= 0 && r.x + r.w <= width && r.y + r.h <= height;
}

std::string rect_text(const Rect& r) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%d,%d,%dx%d)", r.x, r.y, r.w, r.h);
    return buf;
}

// Map cells (pixels or blocks) overlapping `region`.
Rect region_in_map(const TamperMap& map, const Rect& region) {
    if (map.granularity == Granularity::PerPixel) return region;
    const int x0 = region.x / kBlockSize;
    const int y0 = region.y / kBlockSize;
    const int x1 = (region.x + region.w - 1) / kBlockSize;
    const int y1 = (region.y + region.h - 1) / kBlockSize;
    return {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

Channel parse_channel(const std::string& s) {
    if (s == "red" || s == "r") return Channel::Red;
    if (s == "green" || s == "g") return Channel::Green;
    if (s == "blue" || s == "b") return Channel::Blue;
    throw Error(ErrorCode::InvalidArgument, "unknown channel '" + s + "'");
}

AttackMode parse_mode(const std::string& s) {
    if (s == "none") return AttackMode::None;
    if (s == "blackout") return AttackMode::Blackout;
    if (s == "constant") return AttackMode::Constant;
    if (s == "copy") return AttackMode::CopyFrom;
    if (s == "swap") return AttackMode::ChannelSwap;
    if (s == "noise") return AttackMode::Noise;
    throw Error(ErrorCode::InvalidArgument, "unknown attack mode '" + s + "'");
}

}  // namespace

const char* to_string(AttackMode mode) noexcept {
    switch (mode) {
        case AttackMode::None: return "none";
        case AttackMode::Blackout: return "blackout";
        case AttackMode::Constant: return "constant";
        case AttackMode::CopyFrom: return "copy";
        case AttackMode::ChannelSwap: return "swap";
        case AttackMode::Noise: return "noise";
    }
    return "?";
}

std::string AttackSpec::label() const {
    if (!name.empty()) return name;
    std::string out = to_string(mode);
    if (mode == AttackMode::None) return out;
    if (mode == AttackMode::ChannelSwap) {
        return out + "@" + to_string(swap.first) + "-" + to_string(swap.second);
    }
    if (mode == AttackMode::Constant) out += "(" + std::to_string(value) + ")";
    if (zone != 0) return out + "@zone" + std::to_string(zone);
    if (rect) return out + "@" + rect_text(*rect);
    return out;
}

Rect zone_rect(int width, int height, int zone) {
    const int qw = width / 2;
    const int qh = height / 2;
    switch (zone) {
        case 1: return {0, 0, qw, qh};
        case 2: return {qw, 0, qw, qh};
        case 3: return {qw, qh, qw, qh};
        case 4: return {0, qh, qw, qh};
        default: throw Error(ErrorCode::RegionError, "zone must be 1..4");
    }
}

Rect attack_region(const RgbImage& image, const AttackSpec& spec) {
    const Rect whole{0, 0, image.width(), image.height()};
    if (spec.mode == AttackMode::None || spec.mode == AttackMode::ChannelSwap) return whole;
    if (spec.rect.has_value() == (spec.zone != 0)) {
        throw Error(ErrorCode::RegionError, "attack needs exactly one of rect or zone");
    }
    const Rect r = spec.rect ? *spec.rect : zone_rect(image.width(), image.height(), spec.zone);
    if (!fits(r, image.width(), image.height())) {
        throw Error(ErrorCode::RegionError, "attack region " + rect_text(r) + " outside the image");
    }
    return r;
}

RgbImage apply_attack(const RgbImage& image, const AttackSpec& spec) {
    const Rect r = attack_region(image, spec);
    RgbImage out = image;

    switch (spec.mode) {
        case AttackMode::None:
            break;
        case AttackMode::Blackout:
        case AttackMode::Constant: {
            const std::uint8_t v = spec.mode == AttackMode::Blackout ? 0 : spec.value;
            for (int row = r.y; row < r.y + r.h; ++row)
                for (int col = r.x; col < r.x + r.w; ++col) out.set_pixel(row, col, {v, v, v});
            break;
        }
        case AttackMode::CopyFrom: {
            const Rect src{spec.source_x, spec.source_y, r.w, r.h};
            if (!fits(src, image.width(), image.height())) {
                throw Error(ErrorCode::RegionError, "copy source " + rect_text(src) + " outside the image");
            }
            for (int i = 0; i < r.h; ++i)
                for (int j = 0; j < r.w; ++j) out.set_pixel(r.y + i, r.x + j, image.pixel(src.y + i, src.x + j));
            break;
        }
        case AttackMode::ChannelSwap:
            if (spec.swap.first == spec.swap.second) {
                throw Error(ErrorCode::InvalidArgument, "channel swap needs two different channels");
            }
            std::swap(out.plane(spec.swap.first), out.plane(spec.swap.second));
            break;
        case AttackMode::Noise: {
            std::mt19937_64 rng(spec.seed);
            for (int row = r.y; row < r.y + r.h; ++row) {
                for (int col = r.x; col < r.x + r.w; ++col) {
                    const std::uint64_t bits = rng();
                    out.set_pixel(row, col, {static_cast<std::uint8_t>(bits), static_cast<std::uint8_t>(bits >> 8),
                                             static_cast<std::uint8_t>(bits >> 16)});
                }
            }
            break;
        }
    }
    return out;
}

std::string DetectionReport::to_csv() const {
    std::string out = "scenario,attack,detected,mismatch_count,flagged_inside,flagged_outside,region_cells\n";
    for (const auto& c : cells) {
        std::string attack = c.attack;
        if (attack.find_first_of(",\"") != std::string::npos) {
            std::string quoted = "\"";
            for (char ch : attack) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            attack = quoted + "\"";
        }
        out += c.scenario + "," + attack + "," + (c.detected ? "1" : "0") + "," + std::to_string(c.mismatch_count) +
               "," + std::to_string(c.flagged_inside) + "," + std::to_string(c.flagged_outside) + "," +
               std::to_string(c.region_cells) + "\n";
    }
    return out;
}

nlohmann::json DetectionReport::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& c : cells) {
        rows.push_back({{"scenario", c.scenario},
                        {"attack", c.attack},
                        {"detected", c.detected},
                        {"mismatch_count", c.mismatch_count},
                        {"flagged_inside", c.flagged_inside},
                        {"flagged_outside", c.flagged_outside},
                        {"region_cells", c.region_cells}});
    }
    return {{"cells", rows}};
}

DetectionReport run_campaign(const RgbImage& image, const CameraId& camera_id,
                             const std::vector<ScenarioConfig>& scenarios, const std::vector<AttackSpec>& attacks,
                             double tolerance) {
    // Validate every spec before spending time on embedding.
    std::vector<Rect> regions;
    for (const auto& spec : attacks) regions.push_back(attack_region(image, spec));

    auto row = [&](const ScenarioConfig& scenario) {
        std::vector<DetectionCell> out;
        if (attacks.empty()) return out;
        const RgbImage stego = embed(image, camera_id, scenario);
        for (std::size_t a = 0; a < attacks.size(); ++a) {
            const VerificationReport rep = verify(apply_attack(stego, attacks[a]), camera_id, scenario, tolerance);
            DetectionCell cell;
            cell.scenario = scenario.name;
            cell.attack = attacks[a].label();
            cell.detected = !rep.authentic;
            cell.mismatch_count = rep.mismatch_count;
            const Rect area = region_in_map(rep.tamper_map, regions[a]);
            cell.region_cells = static_cast<std::size_t>(area.w) * static_cast<std::size_t>(area.h);
            for (int r = 0; r < rep.tamper_map.rows; ++r) {
                for (int c = 0; c < rep.tamper_map.cols; ++c) {
                    if (!rep.tamper_map.at(r, c)) continue;
                    if (area.contains(r, c)) ++cell.flagged_inside;
                    else ++cell.flagged_outside;
                }
            }
            out.push_back(std::move(cell));
        }
        return out;
    };

    std::vector<std::future<std::vector<DetectionCell>>> rows;
    for (const auto& scenario : scenarios) rows.push_back(std::async(std::launch::async, row, std::cref(scenario)));
    DetectionReport report;
    for (auto& f : rows) {
        auto cells = f.get();
        report.cells.insert(report.cells.end(), cells.begin(), cells.end());
    }
    return report;
}

AttackSpec parse_attack(const nlohmann::json& doc) {
    if (!doc.is_object()) throw Error(ErrorCode::InvalidArgument, "attack entry must be an object");
    try {
        AttackSpec spec;
        spec.mode = parse_mode(doc.at("mode").get<std::string>());
        spec.name = doc.value("name", std::string{});
        if (doc.contains("rect")) {
            const auto r = doc.at("rect").get<std::vector<int>>();
            if (r.size() != 4) throw Error(ErrorCode::InvalidArgument, "rect must be [x, y, w, h]");
            spec.rect = Rect{r[0], r[1], r[2], r[3]};
        }
        spec.zone = doc.value("zone", 0);
        if (spec.mode == AttackMode::Constant) {
            const int v = doc.at("value").get<int>();
            if (v < 0 || v > 255) throw Error(ErrorCode::InvalidArgument, "constant value must be 0..255");
            spec.value = static_cast<std::uint8_t>(v);
        }
        if (spec.mode == AttackMode::CopyFrom) {
            const auto s = doc.at("source").get<std::vector<int>>();
            if (s.size() != 2) throw Error(ErrorCode::InvalidArgument, "source must be [x, y]");
            spec.source_x = s[0];
            spec.source_y = s[1];
        }
        if (spec.mode == AttackMode::ChannelSwap) {
            const auto ch = doc.at("channels").get<std::vector<std::string>>();
            if (ch.size() != 2) throw Error(ErrorCode::InvalidArgument, "channels must name two planes");
            spec.swap = {parse_channel(ch[0]), parse_channel(ch[1])};
        }
        spec.seed = doc.value("seed", std::uint64_t{0});
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("attack entry: ") + e.what());
    }
}

CampaignConfig parse_campaign(const nlohmann::json& doc) {
    if (!doc.is_object()) throw Error(ErrorCode::InvalidArgument, "campaign must be a JSON object");
    try {
        CampaignConfig cfg;
        cfg.image = doc.at("image").get<std::string>();
        cfg.camera_id = doc.at("camera_id").get<std::string>();
        const auto& sc = doc.at("scenarios");
        if (sc.is_string() && sc.get<std::string>() == "all") {
            cfg.scenarios = all_scenario_names();
        } else {
            cfg.scenarios = sc.get<std::vector<std::string>>();
        }
        for (const auto& name : cfg.scenarios) ScenarioConfig::parse(name);
        for (const auto& a : doc.at("attacks")) cfg.attacks.push_back(parse_attack(a));
        cfg.tolerance = doc.value("tolerance", kDefaultTolerance);
        if (!(cfg.tolerance >= 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be non-negative");
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("campaign: ") + e.what());
    }
}

}  // namespace imgauth
