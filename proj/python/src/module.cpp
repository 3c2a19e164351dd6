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

#include <cstring>
#include <string>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "imgauth/attack.hpp"
#include "imgauth/crypto.hpp"
#include "imgauth/embed.hpp"
#include "imgauth/error.hpp"
#include "imgauth/metrics.hpp"
#include "imgauth/scenario.hpp"
#include "imgauth/verifier.hpp"

namespace py = pybind11;
using namespace imgauth;

namespace {

using Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

RgbImage to_image(const Array& a) {
    if (a.ndim() != 3 || a.shape(2) != 3) throw Error(ErrorCode::DimensionError, "expected an HxWx3 uint8 array");
    const int h = static_cast<int>(a.shape(0));
    const int w = static_cast<int>(a.shape(1));
    if (h <= 0 || w <= 0) throw Error(ErrorCode::DimensionError, "image must not be empty");
    RgbImage img(w, h);
    const std::uint8_t* p = a.data();
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c, p += 3) img.set_pixel(r, c, {p[0], p[1], p[2]});
    }
    return img;
}

Array to_array(const RgbImage& img) {
    Array a({img.height(), img.width(), 3});
    std::uint8_t* p = a.mutable_data();
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c, p += 3) {
            const auto px = img.pixel(r, c);
            std::memcpy(p, px.data(), 3);
        }
    }
    return a;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fragile colour-image watermarking: embed, verify, metrics, attacks";

    static py::exception<Error> error_type(m, "Error", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error_type, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
        }
    });

    m.attr("DEFAULT_TOLERANCE") = kDefaultTolerance;

    m.def("scenarios", [] { return all_scenario_names(); }, "All scenario names, spatial first.");

    m.def("derive_photo_id", [](const std::string& camera_id) {
        return derive_photo_id(CameraId::from_text(camera_id)).hex();
    }, py::arg("camera_id"));

    m.def("embed", [](const Array& image, const std::string& camera_id, const std::string& scenario) {
        const RgbImage img = to_image(image);
        const ScenarioConfig sc = ScenarioConfig::parse(scenario);
        const CameraId id = CameraId::from_text(camera_id);
        RgbImage out;
        {
            py::gil_scoped_release release;
            out = embed(img, id, sc);
        }
        return to_array(out);
    }, py::arg("image"), py::arg("camera_id"), py::arg("scenario"));

    m.def("verify_json", [](const Array& image, const std::string& camera_id, const std::string& scenario,
                            double tolerance) {
        const RgbImage img = to_image(image);
        const ScenarioConfig sc = ScenarioConfig::parse(scenario);
        const CameraId id = CameraId::from_text(camera_id);
        py::gil_scoped_release release;
        return to_json(verify(img, id, sc, tolerance)).dump();
    }, py::arg("image"), py::arg("camera_id"), py::arg("scenario"), py::arg("tolerance") = kDefaultTolerance);

    m.def("quality_json", [](const Array& original, const Array& processed) {
        return to_json(assess_quality(to_image(original), to_image(processed))).dump();
    }, py::arg("original"), py::arg("processed"));

    m.def("attack_json", [](const Array& image, const std::string& spec) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(spec);
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::InvalidArgument, e.what());
        }
        return to_array(apply_attack(to_image(image), parse_attack(doc)));
    }, py::arg("image"), py::arg("spec"));

    m.def("zone_rect", [](int width, int height, int zone) {
        const Rect r = zone_rect(width, height, zone);
        return py::make_tuple(r.x, r.y, r.w, r.h);
    }, py::arg("width"), py::arg("height"), py::arg("zone"));
}
