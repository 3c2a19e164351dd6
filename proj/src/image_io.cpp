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

#include "imgauth/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "imgauth/error.hpp"

namespace imgauth {
namespace {

std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return ext;
}

RgbImage from_mat(const cv::Mat& bgr) {
    if (bgr.empty() || bgr.type() != CV_8UC3) {
        throw Error(ErrorCode::DecodeError, "image is not 8-bit, 3-channel");
    }
    RgbImage image(bgr.cols, bgr.rows);
    for (int row = 0; row < bgr.rows; ++row) {
        const auto* src = bgr.ptr<cv::Vec3b>(row);
        for (int col = 0; col < bgr.cols; ++col) {
            image.set_pixel(row, col, {src[col][2], src[col][1], src[col][0]});
        }
    }
    return image;
}

cv::Mat to_mat(const RgbImage& image) {
    cv::Mat bgr(image.height(), image.width(), CV_8UC3);
    for (int row = 0; row < image.height(); ++row) {
        auto* dst = bgr.ptr<cv::Vec3b>(row);
        for (int col = 0; col < image.width(); ++col) {
            const auto px = image.pixel(row, col);
            dst[col] = cv::Vec3b(px[2], px[1], px[0]);
        }
    }
    return bgr;
}

}  // namespace

bool is_lossless_extension(const std::filesystem::path& path) {
    const std::string ext = lower_extension(path);
    return ext == ".png" || ext == ".bmp";
}

RgbImage decode_image(std::span<const std::uint8_t> bytes) {
    if (bytes.empty()) throw Error(ErrorCode::DecodeError, "empty image buffer");
    cv::Mat buffer(1, static_cast<int>(bytes.size()), CV_8UC1, const_cast<std::uint8_t*>(bytes.data()));
    cv::Mat bgr;
    try {
        bgr = cv::imdecode(buffer, cv::IMREAD_COLOR);
    } catch (const cv::Exception& e) {
        throw Error(ErrorCode::DecodeError, std::string("decode failed: ") + e.what());
    }
    if (bgr.empty()) throw Error(ErrorCode::DecodeError, "unrecognized or corrupt image data");
    return from_mat(bgr);
}

RgbImage load_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_image(bytes);
}

std::vector<std::uint8_t> encode_image(const RgbImage& image, const std::string& format) {
    if (format != ".png" && format != ".bmp") {
        throw Error(ErrorCode::InvalidArgument, "only .png and .bmp output is supported, got " + format);
    }
    std::vector<std::uint8_t> out;
    if (!cv::imencode(format, to_mat(image), out)) {
        throw Error(ErrorCode::IoError, "encoding to " + format + " failed");
    }
    return out;
}

void save_image(const std::filesystem::path& path, const RgbImage& image) {
    if (!is_lossless_extension(path)) {
        throw Error(ErrorCode::InvalidArgument,
                    "refusing lossy or unknown output format '" + path.extension().string() +
                        "': use .png or .bmp so the watermark bits survive");
    }
    const auto bytes = encode_image(image, lower_extension(path));
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::IoError, "short write to " + path.string());
}

}  // namespace imgauth
