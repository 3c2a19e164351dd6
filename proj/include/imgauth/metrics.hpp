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
#include <string>

#include <nlohmann/json.hpp>

#include "imgauth/image.hpp"

namespace imgauth {

/// Peak sample value for 8-bit data.
inline constexpr double kPeak = 255.0;
inline constexpr double kSsimC1 = (0.01 * kPeak) * (0.01 * kPeak);
inline constexpr double kSsimC2 = (0.03 * kPeak) * (0.03 * kPeak);

struct MetricSet {
    double mae = 0.0;
    double mse = 0.0;
    double psnr = 0.0;  // dB; +inf when mse == 0
    double ssim = 1.0;
    double uiqi = 1.0;
};

/// Joint values (all three channels pooled for MAE/MSE/PSNR, channel mean
/// for SSIM/UIQI) plus the per-channel breakdown in R, G, B order.
struct QualityReport {
    MetricSet joint;
    std::array<MetricSet, 3> channel;
};

// Plane-level metrics. SSIM and UIQI are the global (unwindowed) forms with
// population variances. All throw DimensionError on shape mismatch.
double mae(const ChannelPlane& x, const ChannelPlane& v);
double mse(const ChannelPlane& x, const ChannelPlane& v);
double psnr(const ChannelPlane& x, const ChannelPlane& v);
double ssim(const ChannelPlane& x, const ChannelPlane& v);
double uiqi(const ChannelPlane& x, const ChannelPlane& v);

// Image-level metrics, joint over the three channels.
double mae(const RgbImage& x, const RgbImage& v);
double mse(const RgbImage& x, const RgbImage& v);
double psnr(const RgbImage& x, const RgbImage& v);
double ssim(const RgbImage& x, const RgbImage& v);
double uiqi(const RgbImage& x, const RgbImage& v);

double psnr_from_mse(double mse_value);

QualityReport assess_quality(const RgbImage& original, const RgbImage& processed);

nlohmann::json to_json(const QualityReport& report);
std::string csv_header();
/// mae,mse,psnr,ssim,uiqi of the joint values.
std::string csv_fields(const MetricSet& m);

}  // namespace imgauth
