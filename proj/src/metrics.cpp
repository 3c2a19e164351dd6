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

#include "imgauth/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "imgauth/error.hpp"

namespace imgauth {
namespace {

void require_same_shape(const ChannelPlane& x, const ChannelPlane& v) {
    if (x.width() != v.width() || x.height() != v.height()) {
        throw Error(ErrorCode::DimensionError, "metric inputs differ in size");
    }
    if (x.empty()) throw Error(ErrorCode::DimensionError, "metric inputs are empty");
}

void require_same_shape(const RgbImage& x, const RgbImage& v) {
    if (x.width() != v.width() || x.height() != v.height()) {
        throw Error(ErrorCode::DimensionError, "metric inputs differ in size");
    }
    if (x.empty()) throw Error(ErrorCode::DimensionError, "metric inputs are empty");
}

struct Moments {
    double mean_x = 0, mean_v = 0, var_x = 0, var_v = 0, cov = 0;
};

// Integer accumulation keeps the sums exact; only the final divisions round.
Moments moments(const ChannelPlane& x, const ChannelPlane& v) {
    const auto xs = x.samples();
    const auto vs = v.samples();
    std::int64_t sx = 0, sv = 0, sxx = 0, svv = 0, sxv = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const std::int64_t a = xs[i];
        const std::int64_t b = vs[i];
        sx += a;
        sv += b;
        sxx += a * a;
        svv += b * b;
        sxv += a * b;
    }
    const double n = static_cast<double>(xs.size());
    Moments m;
    m.mean_x = static_cast<double>(sx) / n;
    m.mean_v = static_cast<double>(sv) / n;
    // n*sum(a^2) - sum(a)^2 stays exact in the long double mantissa for any
    // realistic plane size.
    const long double nn = static_cast<long double>(xs.size());
    m.var_x = static_cast<double>((nn * sxx - static_cast<long double>(sx) * sx) / (nn * nn));
    m.var_v = static_cast<double>((nn * svv - static_cast<long double>(sv) * sv) / (nn * nn));
    m.cov = static_cast<double>((nn * sxv - static_cast<long double>(sx) * sv) / (nn * nn));
    return m;
}

struct ErrorSums {
    std::int64_t abs = 0;
    std::int64_t sq = 0;
    std::size_t n = 0;
};

void accumulate(ErrorSums& acc, const ChannelPlane& x, const ChannelPlane& v) {
    const auto xs = x.samples();
    const auto vs = v.samples();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const std::int64_t d = static_cast<std::int64_t>(xs[i]) - vs[i];
        acc.abs += d < 0 ? -d : d;
        acc.sq += d * d;
    }
    acc.n += xs.size();
}

double ssim_from(const Moments& m) {
    return ((2 * m.mean_x * m.mean_v + kSsimC1) * (2 * m.cov + kSsimC2)) /
           ((m.mean_x * m.mean_x + m.mean_v * m.mean_v + kSsimC1) * (m.var_x + m.var_v + kSsimC2));
}

double uiqi_from(const Moments& m) {
    const double mean_sq = m.mean_x * m.mean_x + m.mean_v * m.mean_v;
    const double luminance = mean_sq == 0.0 ? 1.0 : 2 * m.mean_x * m.mean_v / mean_sq;
    if (m.var_x == 0.0 || m.var_v == 0.0) {
        if (m.var_x == 0.0 && m.var_v == 0.0) return m.mean_x == m.mean_v ? 1.0 : luminance;
        // One side flat: no correlation is measurable.
        return 0.0;
    }
    const double sx = std::sqrt(m.var_x);
    const double sv = std::sqrt(m.var_v);
    return (m.cov / (sx * sv)) * luminance * (2 * sx * sv / (m.var_x + m.var_v));
}

}  // namespace

double psnr_from_mse(double mse_value) {
    if (mse_value == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(kPeak * kPeak / mse_value);
}

double mae(const ChannelPlane& x, const ChannelPlane& v) {
    require_same_shape(x, v);
    ErrorSums acc;
    accumulate(acc, x, v);
    return static_cast<double>(acc.abs) / static_cast<double>(acc.n);
}

double mse(const ChannelPlane& x, const ChannelPlane& v) {
    require_same_shape(x, v);
    ErrorSums acc;
    accumulate(acc, x, v);
    return static_cast<double>(acc.sq) / static_cast<double>(acc.n);
}

double psnr(const ChannelPlane& x, const ChannelPlane& v) { return psnr_from_mse(mse(x, v)); }

double ssim(const ChannelPlane& x, const ChannelPlane& v) {
    require_same_shape(x, v);
    return ssim_from(moments(x, v));
}

double uiqi(const ChannelPlane& x, const ChannelPlane& v) {
    require_same_shape(x, v);
    return uiqi_from(moments(x, v));
}

double mae(const RgbImage& x, const RgbImage& v) {
    require_same_shape(x, v);
    ErrorSums acc;
    for (auto c : {Channel::Red, Channel::Green, Channel::Blue}) accumulate(acc, x.plane(c), v.plane(c));
    return static_cast<double>(acc.abs) / static_cast<double>(acc.n);
}

double mse(const RgbImage& x, const RgbImage& v) {
    require_same_shape(x, v);
    ErrorSums acc;
    for (auto c : {Channel::Red, Channel::Green, Channel::Blue}) accumulate(acc, x.plane(c), v.plane(c));
    return static_cast<double>(acc.sq) / static_cast<double>(acc.n);
}

double psnr(const RgbImage& x, const RgbImage& v) { return psnr_from_mse(mse(x, v)); }

double ssim(const RgbImage& x, const RgbImage& v) {
    require_same_shape(x, v);
    double total = 0.0;
    for (auto c : {Channel::Red, Channel::Green, Channel::Blue}) total += ssim_from(moments(x.plane(c), v.plane(c)));
    return total / 3.0;
}

double uiqi(const RgbImage& x, const RgbImage& v) {
    require_same_shape(x, v);
    double total = 0.0;
    for (auto c : {Channel::Red, Channel::Green, Channel::Blue}) total += uiqi_from(moments(x.plane(c), v.plane(c)));
    return total / 3.0;
}

QualityReport assess_quality(const RgbImage& original, const RgbImage& processed) {
    require_same_shape(original, processed);
    QualityReport r;
    ErrorSums joint;
    for (int c = 0; c < 3; ++c) {
        const auto ch = static_cast<Channel>(c);
        const ChannelPlane& x = original.plane(ch);
        const ChannelPlane& v = processed.plane(ch);
        ErrorSums acc;
        accumulate(acc, x, v);
        accumulate(joint, x, v);
        const Moments m = moments(x, v);
        MetricSet& out = r.channel[c];
        out.mae = static_cast<double>(acc.abs) / static_cast<double>(acc.n);
        out.mse = static_cast<double>(acc.sq) / static_cast<double>(acc.n);
        out.psnr = psnr_from_mse(out.mse);
        out.ssim = ssim_from(m);
        out.uiqi = uiqi_from(m);
    }
    r.joint.mae = static_cast<double>(joint.abs) / static_cast<double>(joint.n);
    r.joint.mse = static_cast<double>(joint.sq) / static_cast<double>(joint.n);
    r.joint.psnr = psnr_from_mse(r.joint.mse);
    r.joint.ssim = (r.channel[0].ssim + r.channel[1].ssim + r.channel[2].ssim) / 3.0;
    r.joint.uiqi = (r.channel[0].uiqi + r.channel[1].uiqi + r.channel[2].uiqi) / 3.0;
    return r;
}

namespace {

nlohmann::json metric_json(const MetricSet& m) {
    // JSON has no infinity; identical images report psnr as the string "inf".
    nlohmann::json psnr_value = std::isinf(m.psnr) ? nlohmann::json("inf") : nlohmann::json(m.psnr);
    return {{"mae", m.mae}, {"mse", m.mse}, {"psnr", psnr_value}, {"ssim", m.ssim}, {"uiqi", m.uiqi}};
}

}  // namespace

nlohmann::json to_json(const QualityReport& report) {
    return {{"joint", metric_json(report.joint)},
            {"red", metric_json(report.channel[0])},
            {"green", metric_json(report.channel[1])},
            {"blue", metric_json(report.channel[2])}};
}

std::string csv_header() { return "mae,mse,psnr,ssim,uiqi"; }

std::string csv_fields(const MetricSet& m) {
    char buf[160];
    if (std::isinf(m.psnr)) {
        std::snprintf(buf, sizeof buf, "%.6f,%.6f,inf,%.6f,%.6f", m.mae, m.mse, m.ssim, m.uiqi);
    } else {
        std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.4f,%.6f,%.6f", m.mae, m.mse, m.psnr, m.ssim, m.uiqi);
    }
    return buf;
}

}  // namespace imgauth
