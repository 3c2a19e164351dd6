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

#include "imgauth/service.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <httplib.h>

#include "imgauth/error.hpp"
#include "imgauth/image_io.hpp"
#include "imgauth/scenario.hpp"
#include "imgauth/verifier.hpp"

namespace imgauth {
namespace {

HttpResult error_result(int status, const std::string& message) { return {status, {{"error", message}}}; }

long parse_long(const std::string& text, const char* what) {
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (text.empty() || *end != '\0' || errno != 0) {
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be an integer");
    }
    return v;
}

std::optional<double> parse_tolerance(const std::optional<std::string>& text) {
    if (!text) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(text->c_str(), &end);
    if (text->empty() || *end != '\0' || !std::isfinite(v) || v < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "tolerance must be a non-negative number");
    }
    return v;
}

// Equal-time comparison so the token cannot be probed byte by byte.
bool same_token(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return false;
    unsigned char diff = 0;
    for (std::size_t i = 0; i < a.size(); ++i) diff |= static_cast<unsigned char>(a[i] ^ b[i]);
    return diff == 0;
}

}  // namespace

ServiceConfig ServiceConfig::load(const std::optional<std::filesystem::path>& file,
                                  const std::function<const char*(const char*)>& env) {
    ServiceConfig cfg;
    if (file) {
        std::ifstream in(*file);
        if (!in) throw Error(ErrorCode::IoError, "cannot read config " + file->string());
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
            cfg.host = j.value("host", cfg.host);
            cfg.port = j.value("port", cfg.port);
            cfg.cidr_path = j.value("cidr_path", cfg.cidr_path.string());
            cfg.admin_token = j.value("admin_token", cfg.admin_token);
            cfg.max_upload_bytes = j.value("max_upload_bytes", cfg.max_upload_bytes);
            cfg.timeout_seconds = j.value("timeout_seconds", cfg.timeout_seconds);
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::InvalidArgument, std::string("config: ") + e.what());
        }
    }
    const auto get = [&](const char* name) -> const char* { return env ? env(name) : std::getenv(name); };
    if (const char* v = get("IMGAUTH_HOST")) cfg.host = v;
    if (const char* v = get("IMGAUTH_PORT")) cfg.port = static_cast<int>(parse_long(v, "IMGAUTH_PORT"));
    if (const char* v = get("IMGAUTH_CIDR_PATH")) cfg.cidr_path = v;
    if (const char* v = get("IMGAUTH_ADMIN_TOKEN")) cfg.admin_token = v;
    if (const char* v = get("IMGAUTH_MAX_UPLOAD_BYTES")) {
        cfg.max_upload_bytes = static_cast<std::size_t>(parse_long(v, "IMGAUTH_MAX_UPLOAD_BYTES"));
    }
    if (const char* v = get("IMGAUTH_TIMEOUT_SECONDS")) {
        cfg.timeout_seconds = static_cast<int>(parse_long(v, "IMGAUTH_TIMEOUT_SECONDS"));
    }
    if (cfg.port < 0 || cfg.port > 65535) throw Error(ErrorCode::InvalidArgument, "port must be 0..65535");
    if (cfg.timeout_seconds <= 0) throw Error(ErrorCode::InvalidArgument, "timeout_seconds must be positive");
    if (cfg.max_upload_bytes == 0) throw Error(ErrorCode::InvalidArgument, "max_upload_bytes must be positive");
    return cfg;
}

struct PasService::Server {
    httplib::Server http;
};

PasService::PasService(ServiceConfig config, LogSink log)
    : config_(std::move(config)),
      log_(log ? std::move(log) : LogSink([](const std::string& line) { std::cerr << line << '\n'; })),
      store_(std::make_unique<CidrStore>(config_.cidr_path)) {}

PasService::~PasService() { stop(); }

void PasService::log(const std::string& line) const { log_(line); }

HttpResult PasService::handle_register(const std::string& authorization, const std::string& body) {
    const std::string prefix = "Bearer ";
    if (config_.admin_token.empty() || authorization.rfind(prefix, 0) != 0 ||
        !same_token(authorization.substr(prefix.size()), config_.admin_token)) {
        log("register status=401");
        return error_result(401, "missing or invalid admin token");
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception&) {
        log("register status=400 reason=body");
        return error_result(400, "body must be JSON");
    }
    if (!j.is_object() || !j.contains("camera_id") || !j["camera_id"].is_string()) {
        log("register status=400 reason=field");
        return error_result(400, "camera_id (string) is required");
    }
    try {
        const CidrRecord rec = store_->register_camera(CameraId::from_text(j["camera_id"].get<std::string>()));
        log("register status=201 photo_id=" + rec.photo_id.hex());
        return {201, {{"photo_id", rec.photo_id.hex()}}};
    } catch (const Error& e) {
        switch (e.code()) {
            case ErrorCode::AlreadyRegistered:
                log("register status=409");
                return error_result(409, "camera already registered");
            case ErrorCode::InvalidCameraId:
                log("register status=400 reason=camera_id");
                return error_result(400, e.what());
            default:
                log("register status=500");
                return error_result(500, "store failure");
        }
    }
}

HttpResult PasService::handle_verify(const VerifyForm& form) {
    const std::string mode = form.mode.value_or("public");
    auto fail = [&](int status, const std::string& reason, const std::string& message) {
        log("verify status=" + std::to_string(status) + " mode=" + mode + " reason=" + reason);
        return error_result(status, message);
    };

    if (mode != "public" && mode != "private" && mode != "hybrid") {
        return fail(400, "mode", "mode must be public, private or hybrid");
    }
    if (!form.scenario) return fail(400, "scenario", "scenario is required");
    std::optional<ScenarioConfig> scenario;
    try {
        scenario = ScenarioConfig::parse(*form.scenario);
    } catch (const Error&) {
        return fail(422, "scenario", "unknown scenario");
    }
    std::optional<double> tolerance;
    try {
        tolerance = parse_tolerance(form.tolerance);
    } catch (const Error& e) {
        return fail(400, "tolerance", e.what());
    }
    if (mode == "public" && form.camera_id) return fail(400, "key", "public mode does not accept key material");
    if (mode == "private" && !form.camera_id) return fail(400, "key", "private mode requires key material");
    const std::string image_class = form.image_class.value_or("permanent");
    if (image_class != "permanent" && image_class != "temporary") {
        return fail(400, "image_class", "image_class must be permanent or temporary");
    }
    std::optional<CameraId> key;
    if (form.camera_id) {
        try {
            key = CameraId::from_text(*form.camera_id);
        } catch (const Error& e) {
            return fail(400, "key", e.what());
        }
    }

    RgbImage image;
    try {
        image = decode_image(std::span(reinterpret_cast<const std::uint8_t*>(form.image.data()), form.image.size()));
    } catch (const Error&) {
        return fail(400, "image", "image could not be decoded");
    }
    if (image.pixel_count() < kMinPixels) return fail(400, "image", "image too small to carry a photo ID");

    const double tau = tolerance.value_or(kDefaultTolerance);
    auto respond = [&](const VerificationReport& report, const std::string& mode_used, const std::string& cidr) {
        nlohmann::json body = to_json(report);
        body["mode_used"] = mode_used;
        body["cidr"] = cidr;
        // Verdicts from caller-supplied keys are not backed by the register.
        body["forensic_grade"] = mode_used == "public";
        log("verify status=200 mode=" + mode + " mode_used=" + mode_used + " cidr=" + cidr +
            " scenario=" + scenario->name + " authentic=" + (report.authentic ? "true" : "false"));
        return HttpResult{200, body};
    };

    const bool private_first = mode == "private" || (mode == "hybrid" && image_class == "temporary" && key);
    if (private_first) return respond(verify(image, *key, *scenario, tau), "private", "skipped");

    const PhotoId photo_id = extract_photo_id(image);
    if (store_->contains(photo_id)) {
        return respond(verify(image, store_->lookup(photo_id), *scenario, tau), "public", "hit");
    }
    if (mode == "hybrid" && key) return respond(verify(image, *key, *scenario, tau), "private", "miss");
    log("verify status=404 mode=" + mode + " cidr=miss photo_id=" + photo_id.hex());
    return {404, {{"error", "photo ID not registered"}, {"photo_id", photo_id.hex()}, {"cidr", "miss"}}};
}

HttpResult PasService::handle_health() const {
    if (!store_->healthy()) return error_result(503, "store unavailable");
    return {200, {{"records", store_->size()}}};
}

int PasService::start() {
    server_ = std::make_unique<Server>();
    auto& http = server_->http;
    http.set_payload_max_length(config_.max_upload_bytes);
    http.set_read_timeout(config_.timeout_seconds, 0);
    http.set_write_timeout(config_.timeout_seconds, 0);

    auto send = [](httplib::Response& res, const HttpResult& r) {
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    http.Post("/cameras", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, handle_register(req.get_header_value("Authorization"), req.body));
    });
    http.Post("/verify", [this, send](const httplib::Request& req, httplib::Response& res) {
        if (!req.is_multipart_form_data() || !req.has_file("image")) {
            send(res, error_result(400, "multipart field 'image' is required"));
            return;
        }
        auto field = [&](const char* name) -> std::optional<std::string> {
            if (!req.has_file(name)) return std::nullopt;
            return req.get_file_value(name).content;
        };
        VerifyForm form;
        form.image = req.get_file_value("image").content;
        form.scenario = field("scenario");
        form.mode = field("mode");
        form.camera_id = field("camera_id");
        if (!form.camera_id) form.camera_id = field("private_key_material");
        form.tolerance = field("tolerance");
        form.image_class = field("image_class");
        send(res, handle_verify(form));
    });
    http.Get("/health", [this, send](const httplib::Request&, httplib::Response& res) { send(res, handle_health()); });
    http.set_exception_handler([send](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
        send(res, error_result(500, "internal error"));
    });
    http.set_logger([this](const httplib::Request& req, const httplib::Response& res) {
        log("http " + req.method + " " + req.path + " " + std::to_string(res.status));
    });

    const int port = config_.port == 0 ? http.bind_to_any_port(config_.host)
                                       : (http.bind_to_port(config_.host, config_.port) ? config_.port : -1);
    if (port < 0) throw Error(ErrorCode::IoError, "cannot bind " + config_.host + ":" + std::to_string(config_.port));
    return port;
}

void PasService::run() {
    if (!server_) start();
    server_->http.listen_after_bind();
}

void PasService::stop() {
    if (server_) server_->http.stop();
}

HttpResult post_verify(const std::string& base_url, const std::string& image_bytes, const std::string& filename,
                       const std::string& scenario, const std::optional<double>& tolerance, int timeout_seconds) {
    httplib::Client client(base_url);
    if (!client.is_valid()) throw Error(ErrorCode::InvalidArgument, "invalid server URL " + base_url);
    client.set_connection_timeout(timeout_seconds, 0);
    client.set_read_timeout(timeout_seconds, 0);
    client.set_write_timeout(timeout_seconds, 0);

    httplib::MultipartFormDataItems items{
        {"image", image_bytes, filename, "application/octet-stream"},
        {"scenario", scenario, "", ""},
        {"mode", "public", "", ""},
    };
    if (tolerance) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", *tolerance);
        items.push_back({"tolerance", buf, "", ""});
    }
    const auto res = client.Post("/verify", items);
    if (!res) throw Error(ErrorCode::Unreachable, "server unreachable: " + httplib::to_string(res.error()));
    HttpResult out{res->status, nullptr};
    try {
        out.body = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception&) {
        out.body = {{"error", res->body}};
    }
    return out;
}

}  // namespace imgauth
