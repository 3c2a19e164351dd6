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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include <httplib.h>

#include "imgauth/attack.hpp"
#include "imgauth/embed.hpp"
#include "imgauth/error.hpp"
#include "imgauth/image_io.hpp"
#include "imgauth/service.hpp"
#include "imgauth/testimages.hpp"

using namespace imgauth;
namespace fs = std::filesystem;

namespace {

constexpr const char* kSecret = "camera-secret-0042";
constexpr const char* kToken = "admin-token";

struct Fixture {
    fs::path dir;
    std::mutex mu;
    std::vector<std::string> lines;
    std::unique_ptr<PasService> svc;

    Fixture() {
        std::random_device rd;
        dir = fs::temp_directory_path() / ("imgauth-svc-" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(dir);
        ServiceConfig cfg;
        cfg.cidr_path = dir / "cidr.ndjson";
        cfg.admin_token = kToken;
        cfg.port = 0;
        svc = std::make_unique<PasService>(cfg, [this](const std::string& l) {
            std::lock_guard lock(mu);
            lines.push_back(l);
        });
    }
    ~Fixture() {
        svc.reset();
        fs::remove_all(dir);
    }

    bool logs_clean(const std::string& needle) {
        std::lock_guard lock(mu);
        for (const auto& l : lines)
            if (l.find(needle) != std::string::npos) return false;
        return true;
    }
};

std::string png_of(const RgbImage& img) {
    const auto bytes = encode_image(img, ".png");
    return {bytes.begin(), bytes.end()};
}

RgbImage stego(const char* camera, const char* scenario) {
    return embed(make_test_image(64, 48, TestPattern::PhotoLike, 5), CameraId::from_text(camera),
                 ScenarioConfig::parse(scenario));
}

VerifyForm form_for(const RgbImage& img, const char* scenario) {
    VerifyForm f;
    f.image = png_of(img);
    f.scenario = scenario;
    return f;
}

}  // namespace

TEST_CASE("camera registration status codes") {
    Fixture fx;
    const auto body = std::string(R"({"camera_id":")") + kSecret + "\"}";
    CHECK(fx.svc->handle_register("", body).status == 401);
    CHECK(fx.svc->handle_register("Bearer wrong", body).status == 401);
    CHECK(fx.svc->handle_register("admin-token", body).status == 401);
    CHECK(fx.svc->handle_register("Bearer admin-token", "{").status == 400);
    CHECK(fx.svc->handle_register("Bearer admin-token", "{}").status == 400);
    CHECK(fx.svc->handle_register("Bearer admin-token", R"({"camera_id":""})").status == 400);
    const HttpResult ok = fx.svc->handle_register("Bearer admin-token", body);
    CHECK(ok.status == 201);
    CHECK(ok.body["photo_id"] == derive_photo_id(CameraId::from_text(kSecret)).hex());
    CHECK(fx.svc->handle_register("Bearer admin-token", body).status == 409);
    const HttpResult acef = fx.svc->handle_register("Bearer admin-token", R"({"camera_id":"acef"})");
    CHECK(acef.status == 201);
    CHECK(acef.body["photo_id"] == "C42C3EDC13C5A65B9F6C12CA512A925616BC6BF1");
    CHECK(fx.logs_clean(kSecret));
}

TEST_CASE("registration is disabled without a token") {
    fs::path dir = fs::temp_directory_path() / "imgauth-svc-notoken";
    fs::remove_all(dir);
    fs::create_directories(dir);
    ServiceConfig cfg;
    cfg.cidr_path = dir / "c.ndjson";
    PasService svc(cfg, [](const std::string&) {});
    CHECK(svc.handle_register("Bearer ", R"({"camera_id":"x"})").status == 401);
    fs::remove_all(dir);
}

TEST_CASE("health reflects the store") {
    Fixture fx;
    HttpResult h = fx.svc->handle_health();
    CHECK(h.status == 200);
    CHECK(h.body == nlohmann::json{{"records", 0}});
    fx.svc->handle_register("Bearer admin-token", R"({"camera_id":"one"})");
    CHECK(fx.svc->handle_health().body["records"] == 1);
    fs::remove(fx.dir / "cidr.ndjson");
    CHECK(fx.svc->handle_health().status == 503);
}

TEST_CASE("public verification") {
    Fixture fx;
    fx.svc->handle_register("Bearer admin-token", std::string(R"({"camera_id":")") + kSecret + "\"}");
    const RgbImage clean = stego(kSecret, "f4");

    HttpResult r = fx.svc->handle_verify(form_for(clean, "f4"));
    CHECK(r.status == 200);
    CHECK(r.body["authentic"] == true);
    CHECK(r.body["mode_used"] == "public");
    CHECK(r.body["cidr"] == "hit");
    CHECK(r.body["forensic_grade"] == true);

    AttackSpec a;
    a.rect = Rect{8, 8, 16, 16};
    r = fx.svc->handle_verify(form_for(apply_attack(clean, a), "f4"));
    CHECK(r.status == 200);
    CHECK(r.body["authentic"] == false);
    CHECK_FALSE(r.body["rects"].empty());

    r = fx.svc->handle_verify(form_for(stego("unregistered", "f4"), "f4"));
    CHECK(r.status == 404);
    CHECK(r.body["cidr"] == "miss");

    CHECK(fx.logs_clean(kSecret));
}

TEST_CASE("verification request validation") {
    Fixture fx;
    const RgbImage clean = stego(kSecret, "s2");
    VerifyForm f = form_for(clean, "s2");

    VerifyForm bad = f;
    bad.mode = "offline";
    CHECK(fx.svc->handle_verify(bad).status == 400);
    bad = f;
    bad.scenario.reset();
    CHECK(fx.svc->handle_verify(bad).status == 400);
    bad = f;
    bad.scenario = "s9";
    CHECK(fx.svc->handle_verify(bad).status == 422);
    bad = f;
    bad.tolerance = "-1";
    CHECK(fx.svc->handle_verify(bad).status == 400);
    bad.tolerance = "abc";
    CHECK(fx.svc->handle_verify(bad).status == 400);
    bad = f;
    bad.camera_id = kSecret;
    CHECK(fx.svc->handle_verify(bad).status == 400);  // public forbids key material
    bad = f;
    bad.mode = "private";
    CHECK(fx.svc->handle_verify(bad).status == 400);  // private requires it
    bad = f;
    bad.mode = "hybrid";
    bad.image_class = "ephemeral";
    CHECK(fx.svc->handle_verify(bad).status == 400);
    bad = f;
    bad.image = "not an image";
    CHECK(fx.svc->handle_verify(bad).status == 400);
    bad = f;
    bad.image = png_of(RgbImage(10, 10));
    CHECK(fx.svc->handle_verify(bad).status == 400);
}

TEST_CASE("private and hybrid modes") {
    Fixture fx;
    const RgbImage clean = stego(kSecret, "s4");
    VerifyForm f = form_for(clean, "s4");
    f.mode = "private";
    f.camera_id = kSecret;
    HttpResult r = fx.svc->handle_verify(f);
    CHECK(r.status == 200);
    CHECK(r.body["authentic"] == true);
    CHECK(r.body["mode_used"] == "private");
    CHECK(r.body["cidr"] == "skipped");
    CHECK(r.body["forensic_grade"] == false);

    f.mode = "hybrid";
    r = fx.svc->handle_verify(f);
    CHECK(r.body["mode_used"] == "private");
    CHECK(r.body["cidr"] == "miss");

    f.camera_id.reset();
    CHECK(fx.svc->handle_verify(f).status == 404);

    fx.svc->handle_register("Bearer admin-token", std::string(R"({"camera_id":")") + kSecret + "\"}");
    r = fx.svc->handle_verify(f);
    CHECK(r.body["mode_used"] == "public");
    CHECK(r.body["cidr"] == "hit");

    f.camera_id = kSecret;
    f.image_class = "temporary";
    r = fx.svc->handle_verify(f);
    CHECK(r.body["mode_used"] == "private");
    CHECK(r.body["cidr"] == "skipped");

    CHECK(fx.logs_clean(kSecret));
}

TEST_CASE("service verdict equals the library verdict") {
    Fixture fx;
    fx.svc->handle_register("Bearer admin-token", std::string(R"({"camera_id":")") + kSecret + "\"}");
    for (const char* name : {"s1", "s3", "f1", "f2", "f5"}) {
        const RgbImage clean = stego(kSecret, name);
        AttackSpec a;
        a.mode = AttackMode::Noise;
        a.rect = Rect{30, 20, 4, 4};
        a.seed = 3;
        for (const RgbImage& img : {clean, apply_attack(clean, a)}) {
            const auto lib = to_json(verify(img, CameraId::from_text(kSecret), ScenarioConfig::parse(name)));
            nlohmann::json got = fx.svc->handle_verify(form_for(img, name)).body;
            for (const char* k : {"mode_used", "cidr", "forensic_grade"}) got.erase(k);
            CHECK(got == lib);
        }
    }
}

TEST_CASE("live HTTP round trip") {
    Fixture fx;
    const int port = fx.svc->start();
    REQUIRE(port > 0);
    std::thread server([&] { fx.svc->run(); });
    const std::string base = "http://127.0.0.1:" + std::to_string(port);

    httplib::Client client(base);
    auto health = client.Get("/health");
    REQUIRE(health);
    CHECK(health->status == 200);

    httplib::Headers auth{{"Authorization", std::string("Bearer ") + kToken}};
    auto reg = client.Post("/cameras", auth, std::string(R"({"camera_id":")") + kSecret + "\"}", "application/json");
    REQUIRE(reg);
    CHECK(reg->status == 201);
    CHECK(reg->body.find(kSecret) == std::string::npos);

    const RgbImage clean = stego(kSecret, "s2");
    HttpResult r = post_verify(base, png_of(clean), "x.png", "s2");
    CHECK(r.status == 200);
    CHECK(r.body["authentic"] == true);
    r = post_verify(base, png_of(clean), "x.png", "s7");
    CHECK(r.status == 422);

    httplib::MultipartFormDataItems items{{"image", png_of(clean), "x.png", "image/png"},
                                          {"scenario", "s2", "", ""},
                                          {"mode", "private", "", ""},
                                          {"private_key_material", kSecret, "", ""}};
    auto priv = client.Post("/verify", items);
    REQUIRE(priv);
    CHECK(priv->status == 200);
    CHECK(nlohmann::json::parse(priv->body)["mode_used"] == "private");
    CHECK(priv->body.find(kSecret) == std::string::npos);

    auto no_image = client.Post("/verify", httplib::MultipartFormDataItems{{"scenario", "s2", "", ""}});
    REQUIRE(no_image);
    CHECK(no_image->status == 400);

    fx.svc->stop();
    server.join();
    CHECK(fx.logs_clean(kSecret));
    CHECK_FALSE(fx.logs_clean("http POST /verify 200"));

    try {
        post_verify(base, png_of(clean), "x.png", "s2", std::nullopt, 2);
        FAIL("expected Unreachable");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Unreachable);
    }
}

TEST_CASE("configuration file and environment overrides") {
    const fs::path file = fs::temp_directory_path() / "imgauth-svc-config.json";
    {
        std::ofstream out(file);
        out << R"({"host":"0.0.0.0","port":9000,"cidr_path":"/tmp/x.ndjson","admin_token":"t","timeout_seconds":5})";
    }
    std::map<std::string, std::string> env;
    auto lookup = [&](const char* k) -> const char* {
        auto it = env.find(k);
        return it == env.end() ? nullptr : it->second.c_str();
    };
    ServiceConfig cfg = ServiceConfig::load(file, lookup);
    CHECK(cfg.host == "0.0.0.0");
    CHECK(cfg.port == 9000);
    CHECK(cfg.admin_token == "t");
    CHECK(cfg.timeout_seconds == 5);
    CHECK(cfg.max_upload_bytes == 32u << 20);

    env["IMGAUTH_PORT"] = "9100";
    env["IMGAUTH_ADMIN_TOKEN"] = "env-token";
    env["IMGAUTH_MAX_UPLOAD_BYTES"] = "1024";
    cfg = ServiceConfig::load(file, lookup);
    CHECK(cfg.port == 9100);
    CHECK(cfg.admin_token == "env-token");
    CHECK(cfg.max_upload_bytes == 1024);

    env["IMGAUTH_PORT"] = "seventy";
    CHECK_THROWS_AS(ServiceConfig::load(file, lookup), Error);
    env["IMGAUTH_PORT"] = "70000";
    CHECK_THROWS_AS(ServiceConfig::load(file, lookup), Error);
    env.clear();
    CHECK(ServiceConfig::load(std::nullopt, lookup).port == 8080);
    CHECK_THROWS_AS(ServiceConfig::load(fs::path("/nonexistent/imgauth.json"), lookup), Error);
    fs::remove(file);
}
