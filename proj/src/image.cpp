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

#include "imgauth/image.hpp"

#include <string>
#include <utility>

#include "imgauth/error.hpp"

namespace imgauth {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidCameraId: return "InvalidCameraId";
        case ErrorCode::InvalidScenario: return "InvalidScenario";
        case ErrorCode::ImageTooSmall: return "ImageTooSmall";
        case ErrorCode::DimensionError: return "DimensionError";
        case ErrorCode::RegionError: return "RegionError";
        case ErrorCode::DecodeError: return "DecodeError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::AlreadyRegistered: return "AlreadyRegistered";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::StoreError: return "StoreError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Unreachable: return "Unreachable";
    }
    return "Unknown";
}

const char* to_string(Channel c) noexcept {
    switch (c) {
        case Channel::Red: return "red";
        case Channel::Green: return "green";
        case Channel::Blue: return "blue";
    }
    return "?";
}

ChannelPlane::ChannelPlane(int width, int height, std::uint8_t fill) : width_(width), height_(height) {
    if (width < 1 || height < 1) {
        throw Error(ErrorCode::DimensionError, "plane dimensions must be positive");
    }
    samples_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

ChannelPlane::ChannelPlane(int width, int height, std::vector<std::uint8_t> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
    if (width < 1 || height < 1) {
        throw Error(ErrorCode::DimensionError, "plane dimensions must be positive");
    }
    if (samples_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw Error(ErrorCode::DimensionError,
                    "sample count " + std::to_string(samples_.size()) + " does not match " +
                        std::to_string(width) + "x" + std::to_string(height));
    }
}

RgbImage::RgbImage(int width, int height)
    : planes_{ChannelPlane(width, height), ChannelPlane(width, height), ChannelPlane(width, height)} {}

std::array<std::uint8_t, 3> RgbImage::pixel(int row, int col) const {
    return {planes_[0].at(row, col), planes_[1].at(row, col), planes_[2].at(row, col)};
}

void RgbImage::set_pixel(int row, int col, std::array<std::uint8_t, 3> rgb) {
    for (int c = 0; c < 3; ++c) planes_[c].at(row, col) = rgb[c];
}

std::array<ChannelPlane, 3> decompose(const RgbImage& image) {
    return {image.plane(Channel::Red), image.plane(Channel::Green), image.plane(Channel::Blue)};
}

RgbImage recompose(ChannelPlane red, ChannelPlane green, ChannelPlane blue) {
    if (red.width() != green.width() || red.width() != blue.width() ||
        red.height() != green.height() || red.height() != blue.height()) {
        throw Error(ErrorCode::DimensionError, "planes differ in size");
    }
    RgbImage out;
    out.planes_ = {std::move(red), std::move(green), std::move(blue)};
    return out;
}

BlockGrid pad_to_block_multiple(const ChannelPlane& plane) {
    if (plane.empty()) throw Error(ErrorCode::DimensionError, "cannot tile an empty plane");

    BlockGrid grid;
    grid.width = plane.width();
    grid.height = plane.height();
    grid.block_cols = (plane.width() + kBlockSize - 1) / kBlockSize;
    grid.block_rows = (plane.height() + kBlockSize - 1) / kBlockSize;
    grid.blocks.resize(static_cast<std::size_t>(grid.block_cols) * grid.block_rows);

    for (int br = 0; br < grid.block_rows; ++br) {
        for (int bc = 0; bc < grid.block_cols; ++bc) {
            SampleTile& tile = grid.block(br, bc);
            for (int i = 0; i < kBlockSize; ++i) {
                const int row = clamp_coord(br * kBlockSize + i, plane.height());
                for (int j = 0; j < kBlockSize; ++j) {
                    const int col = clamp_coord(bc * kBlockSize + j, plane.width());
                    tile[i * kBlockSize + j] = plane.at(row, col);
                }
            }
        }
    }
    return grid;
}

ChannelPlane reassemble(const BlockGrid& grid) {
    if (grid.block_cols * kBlockSize < grid.width || grid.block_rows * kBlockSize < grid.height ||
        grid.blocks.size() != static_cast<std::size_t>(grid.block_cols) * grid.block_rows) {
        throw Error(ErrorCode::DimensionError, "block grid does not cover its recorded extent");
    }
    ChannelPlane plane(grid.width, grid.height);
    for (int row = 0; row < grid.height; ++row) {
        for (int col = 0; col < grid.width; ++col) {
            const SampleTile& tile = grid.block(row / kBlockSize, col / kBlockSize);
            plane.at(row, col) = tile[(row % kBlockSize) * kBlockSize + col % kBlockSize];
        }
    }
    return plane;
}

}  // namespace imgauth
