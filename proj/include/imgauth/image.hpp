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
#include <cstdint>
#include <span>
#include <vector>

namespace imgauth {

/// Color planes in their fixed storage order.
enum class Channel : int { Red = 0, Green = 1, Blue = 2 };

const char* to_string(Channel c) noexcept;

/// One 8-bit color plane, row-major.
class ChannelPlane {
public:
    ChannelPlane() = default;
    ChannelPlane(int width, int height, std::uint8_t fill = 0);
    ChannelPlane(int width, int height, std::vector<std::uint8_t> samples);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }

    std::uint8_t at(int row, int col) const { return samples_[index(row, col)]; }
    std::uint8_t& at(int row, int col) { return samples_[index(row, col)]; }

    std::span<const std::uint8_t> samples() const noexcept { return samples_; }
    std::span<std::uint8_t> samples() noexcept { return samples_; }

    bool operator==(const ChannelPlane&) const = default;

private:
    std::size_t index(int row, int col) const noexcept {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(col);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> samples_;
};

/// Three equally sized planes in R, G, B order.
class RgbImage {
public:
    RgbImage() = default;
    RgbImage(int width, int height);

    int width() const noexcept { return planes_[0].width(); }
    int height() const noexcept { return planes_[0].height(); }
    std::size_t pixel_count() const noexcept { return planes_[0].size(); }
    bool empty() const noexcept { return planes_[0].empty(); }

    const ChannelPlane& plane(Channel c) const { return planes_[static_cast<int>(c)]; }
    ChannelPlane& plane(Channel c) { return planes_[static_cast<int>(c)]; }

    std::array<std::uint8_t, 3> pixel(int row, int col) const;
    void set_pixel(int row, int col, std::array<std::uint8_t, 3> rgb);

    bool operator==(const RgbImage&) const = default;

private:
    friend RgbImage recompose(ChannelPlane, ChannelPlane, ChannelPlane);
    std::array<ChannelPlane, 3> planes_;
};

/// Role assignment of the three planes. Defaults follow the single-modifier
/// layout: the ciphered Blue plane drives bits into Red; Green carries the
/// photo-ID reserve.
struct ChannelRoles {
    Channel modifier = Channel::Blue;
    Channel modified = Channel::Red;
    Channel unprocessed = Channel::Green;

    bool valid() const noexcept {
        return modifier != modified && modifier != unprocessed && modified != unprocessed;
    }
    bool operator==(const ChannelRoles&) const = default;
};

inline constexpr int kBlockSize = 8;
using SampleTile = std::array<std::uint8_t, kBlockSize * kBlockSize>;

/// Plane tiled into 8x8 blocks after edge-replication padding.
struct BlockGrid {
    int block_cols = 0;
    int block_rows = 0;
    int width = 0;   // original, before padding
    int height = 0;
    std::vector<SampleTile> blocks;  // row-major over the block grid

    const SampleTile& block(int brow, int bcol) const {
        return blocks[static_cast<std::size_t>(brow) * block_cols + bcol];
    }
    SampleTile& block(int brow, int bcol) {
        return blocks[static_cast<std::size_t>(brow) * block_cols + bcol];
    }
};

std::array<ChannelPlane, 3> decompose(const RgbImage& image);
RgbImage recompose(ChannelPlane red, ChannelPlane green, ChannelPlane blue);

/// Pads up to the next multiple of 8 in both directions by replicating the
/// last row and column.
BlockGrid pad_to_block_multiple(const ChannelPlane& plane);
ChannelPlane reassemble(const BlockGrid& grid);

/// Row/column of the source sample that an (edge-replicated) padded
/// coordinate maps to.
inline int clamp_coord(int v, int extent) noexcept { return v < extent ? v : extent - 1; }

}  // namespace imgauth
