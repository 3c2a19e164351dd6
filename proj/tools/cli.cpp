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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "imgauth/attack.hpp"
#include "imgauth/calibration.hpp"
#include "imgauth/embed.hpp"
#include "imgauth/error.hpp"
#include "imgauth/image_io.hpp"
#include "imgauth/metrics.hpp"
#include "imgauth/service.hpp"
#include "imgauth/testimages.hpp"
#include "imgauth/verifier.hpp"

namespace imgauth::cli {
namespace {

namespace fs = std::filesystem;

int exit_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ImageTooSmall: return kTooSmall;
        case ErrorCode::InvalidScenario:
        case ErrorCode::RegionError:
        case ErrorCode::InvalidArgument:
        case ErrorCode::InvalidCameraId: return kUsage;
        case ErrorCode::Unreachable: return kUnreachable;
        default: return kIoError;
    }
}

std::string fmt(double v, int precision = 4) {
    if (std::isinf(v)) return "inf";
    std::ostringstream s;
    s << std::fixed << std::setprecision(precision) << v;
    return s.str();
}

CameraId resolve_camera(const std::string& flag) {
    if (!flag.empty()) return CameraId::from_text(flag);
    if (const char* env = std::getenv("IMGAUTH_CAMERA_ID")) return CameraId::from_text(env);
    throw Error(ErrorCode::InvalidArgument, "a camera ID is required (--camera-id or IMGAUTH_CAMERA_ID)");
}

std::vector<int> split_ints(const std::string& text, std::size_t expected, const char* what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        const long v = std::strtol(item.c_str(), &end, 10);
        if (item.empty() || *end != '\0') throw Error(ErrorCode::InvalidArgument, std::string(what) + ": not an integer list");
        out.push_back(static_cast<int>(v));
    }
    if (out.size() != expected) {
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " needs " + std::to_string(expected) + " values");
    }
    return out;
}

void print_quality(std::ostream& out, const QualityReport& q, const std::string& format) {
    if (format == "json") {
        out << to_json(q).dump(2) << '\n';
    } else if (format == "csv") {
        out << csv_header() << '\n' << csv_fields(q.joint) << '\n';
    } else {
        out << "MAE   " << fmt(q.joint.mae) << '\n'
            << "MSE   " << fmt(q.joint.mse) << '\n'
            << "PSNR  " << fmt(q.joint.psnr) << " dB\n"
            << "SSIM  " << fmt(q.joint.ssim, 6) << '\n'
            << "UIQI  " << fmt(q.joint.uiqi, 6) << '\n';
    }
}

void print_report(std::ostream& out, const nlohmann::json& j, const std::string& format) {
    if (format == "json") {
        out << j.dump(2) << '\n';
        return;
    }
    if (format == "csv") {
        out << "authentic,photo_id_match,scenario,mismatch_count,mismatch_ratio,rects\n"
            << (j.value("authentic", false) ? 1 : 0) << ',' << (j.value("photo_id_match", false) ? 1 : 0) << ','
            << j.value("scenario", std::string{}) << ',' << j.value("mismatch_count", 0) << ','
            << j.value("mismatch_ratio", 0.0) << ',' << j["rects"].size() << '\n';
        return;
    }
    out << "authentic       " << (j.value("authentic", false) ? "yes" : "no") << '\n';
    out << "photo id        " << (j["photo_id"].is_string() ? j["photo_id"].get<std::string>() : "-")
        << (j.value("photo_id_match", false) ? " (match)" : " (mismatch)") << '\n';
    out << "scenario        " << j.value("scenario", std::string{}) << '\n';
    out << "mismatches      " << j.value("mismatch_count", 0) << " (" << fmt(100.0 * j.value("mismatch_ratio", 0.0), 3)
        << "% of " << j.value("granularity", std::string{}) << "s)\n";
    if (j.contains("mode_used")) {
        out << "mode            " << j["mode_used"].get<std::string>() << " (cidr " << j["cidr"].get<std::string>()
            << ")\n";
    }
    const auto& rects = j["rects"];
    if (!rects.empty()) {
        out << "regions         " << rects.size() << (j.value("rects_truncated", false) ? "+" : "") << '\n';
        for (std::size_t i = 0; i < rects.size() && i < 10; ++i) {
            out << "  x=" << rects[i]["x"] << " y=" << rects[i]["y"] << " w=" << rects[i]["w"] << " h=" << rects[i]["h"]
                << '\n';
        }
        if (rects.size() > 10) out << "  ...\n";
    }
    for (const auto& note : j.value("coverage_notes", std::vector<std::string>{})) out << "note            " << note << '\n';
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + p.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream o(p, std::ios::binary);
    if (!o) throw Error(ErrorCode::IoError, "cannot write " + p.string());
    o << text;
    if (!o) throw Error(ErrorCode::IoError, "short write to " + p.string());
}

RgbImage resolve_image(const std::string& source, const fs::path& base) {
    if (source.rfind("synthetic:", 0) == 0) {
        const std::string which = source.substr(10);
        if (which == "scene") return attack_scene_image();
        for (auto& named : standard_test_images()) {
            if (named.name == which) return named.image;
        }
        throw Error(ErrorCode::InvalidArgument, "unknown synthetic image '" + which + "'");
    }
    const fs::path p = fs::path(source).is_absolute() ? fs::path(source) : base / source;
    return load_image(p);
}

// Per-image ordering checks printed by bench.
struct OrderCheck {
    std::string label;
    std::vector<std::vector<std::string>> tiers;  // each tier must beat every later tier
};

std::vector<std::string> check_orderings(const std::map<std::string, MetricSet>& m, const std::string& image) {
    static const std::vector<OrderCheck> checks{
        {"spatial s2,s4 > s1 > s3", {{"s2", "s4"}, {"s1"}, {"s3"}}},
        {"frequency f4,f5 > f1 > f3 > f2", {{"f4", "f5"}, {"f1"}, {"f3"}, {"f2"}}},
    };
    std::vector<std::string> lines;
    for (const auto& c : checks) {
        for (const char* metric : {"psnr", "ssim", "uiqi"}) {
            auto value = [&](const std::string& s) {
                const MetricSet& v = m.at(s);
                return std::string(metric) == "psnr" ? v.psnr : std::string(metric) == "ssim" ? v.ssim : v.uiqi;
            };
            bool present = true;
            for (const auto& tier : c.tiers)
                for (const auto& s : tier) present = present && m.contains(s);
            if (!present) continue;
            bool ok = true;
            for (std::size_t a = 0; a < c.tiers.size(); ++a)
                for (std::size_t b = a + 1; b < c.tiers.size(); ++b)
                    for (const auto& hi : c.tiers[a])
                        for (const auto& lo : c.tiers[b]) ok = ok && value(hi) > value(lo);
            lines.push_back(std::string(ok ? "ok   " : "FAIL ") + image + " " + metric + " " + c.label);
        }
    }
    return lines;
}

PasService* g_service = nullptr;

extern "C" void on_signal(int) {
    if (g_service) g_service->stop();
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fragile watermark embedding, verification and tamper assessment"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "table";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json", "csv"}));

    // embed
    std::string in_path, out_path, camera, scenario_name;
    auto* embed_cmd = app.add_subcommand("embed", "Embed the watermark into an image");
    embed_cmd->add_option("--input,-i", in_path)->required();
    embed_cmd->add_option("--output,-o", out_path)->required();
    embed_cmd->add_option("--camera-id", camera);
    embed_cmd->add_option("--scenario,-s", scenario_name)->required();

    // verify
    std::string server;
    std::optional<double> tolerance;
    auto* verify_cmd = app.add_subcommand("verify", "Verify an image");
    verify_cmd->add_option("--input,-i", in_path)->required();
    auto* cam_opt = verify_cmd->add_option("--camera-id", camera);
    auto* srv_opt = verify_cmd->add_option("--server", server, "Base URL of an authentication server");
    cam_opt->excludes(srv_opt);
    verify_cmd->add_option("--scenario,-s", scenario_name)->required();
    verify_cmd->add_option("--tolerance", tolerance)->check(CLI::NonNegativeNumber);

    // metrics
    std::string reference, test;
    auto* metrics_cmd = app.add_subcommand("metrics", "Quality metrics between two images");
    metrics_cmd->add_option("--reference,-r", reference)->required();
    metrics_cmd->add_option("--test,-t", test)->required();

    // attack
    int zone = 0;
    std::string rect_text, mode_name = "blackout", source_text, channels_text = "red,blue";
    int value = 0;
    std::uint64_t seed = 0;
    auto* attack_cmd = app.add_subcommand("attack", "Apply a simulated attack");
    attack_cmd->add_option("--input,-i", in_path)->required();
    attack_cmd->add_option("--output,-o", out_path)->required();
    auto* zone_opt = attack_cmd->add_option("--zone", zone, "Quadrant 1..4");
    auto* rect_opt = attack_cmd->add_option("--rect", rect_text, "X,Y,W,H");
    zone_opt->excludes(rect_opt);
    attack_cmd->add_option("--mode", mode_name)
        ->check(CLI::IsMember({"blackout", "constant", "copy", "swap", "noise"}));
    attack_cmd->add_option("--value", value)->check(CLI::Range(0, 255));
    attack_cmd->add_option("--source", source_text, "X,Y of the copy source");
    attack_cmd->add_option("--channels", channels_text, "Planes to swap, e.g. red,blue");
    attack_cmd->add_option("--seed", seed);

    // bench
    std::string images_dir, scenarios_text = "all", bench_out;
    bool synthetic = false;
    auto* bench_cmd = app.add_subcommand("bench", "Quality benchmark over images x scenarios");
    auto* dir_opt = bench_cmd->add_option("--images", images_dir);
    auto* syn_opt = bench_cmd->add_flag("--synthetic", synthetic, "Use the built-in test images");
    dir_opt->excludes(syn_opt);
    bench_cmd->add_option("--scenarios", scenarios_text, "all or a comma list");
    bench_cmd->add_option("--out", bench_out, "CSV report path (stdout when omitted)");
    bench_cmd->add_option("--camera-id", camera);

    // synth
    std::string synth_dir;
    auto* synth_cmd = app.add_subcommand("synth", "Write the built-in test images as PNG");
    synth_cmd->add_option("--out", synth_dir)->required();

    // campaign
    std::string campaign_path, campaign_out;
    auto* campaign_cmd = app.add_subcommand("campaign", "Run an attack campaign from a JSON file");
    campaign_cmd->add_option("--config", campaign_path)->required();
    campaign_cmd->add_option("--out", campaign_out);

    // calibrate
    CalibrationOptions cal;
    auto* cal_cmd = app.add_subcommand("calibrate", "Measure the frequency-domain tolerance");
    cal_cmd->add_option("--blocks", cal.blocks)->check(CLI::PositiveNumber);
    cal_cmd->add_option("--seed", cal.seed);

    // serve
    std::string config_path;
    auto* serve_cmd = app.add_subcommand("serve", "Run the authentication server");
    serve_cmd->add_option("--config", config_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*embed_cmd) {
            const ScenarioConfig sc = ScenarioConfig::parse(scenario_name);
            if (!is_lossless_extension(out_path)) {
                err << "error: output must be .png or .bmp; lossy formats destroy the watermark\n";
                return kLossy;
            }
            const CameraId id = resolve_camera(camera);
            const RgbImage input = load_image(in_path);
            const RgbImage stego = embed(input, id, sc);
            save_image(out_path, stego);
            if (format == "table") out << "wrote " << out_path << " (" << sc.name << ", " << describe(sc) << ")\n";
            print_quality(out, assess_quality(input, stego), format);
            return kOk;
        }

        if (*verify_cmd) {
            const ScenarioConfig sc = ScenarioConfig::parse(scenario_name);
            if (!server.empty()) {
                const std::string bytes = read_file(in_path);
                const HttpResult r = post_verify(server, bytes, fs::path(in_path).filename().string(), sc.name, tolerance);
                if (r.status == 200) {
                    print_report(out, r.body, format);
                    return r.body.value("authentic", false) ? kOk : kTampered;
                }
                const std::string msg = r.body.is_object() ? r.body.value("error", std::string{}) : std::string{};
                err << "server: " << r.status << ' ' << msg << '\n';
                if (r.status == 404) return kTampered;
                if (r.status == 422) return kUsage;
                return kIoError;
            }
            const CameraId id = resolve_camera(camera);
            const RgbImage image = load_image(in_path);
            const VerificationReport rep = verify(image, id, sc, tolerance.value_or(kDefaultTolerance));
            print_report(out, to_json(rep), format);
            return rep.authentic ? kOk : kTampered;
        }

        if (*metrics_cmd) {
            print_quality(out, assess_quality(load_image(reference), load_image(test)), format);
            return kOk;
        }

        if (*attack_cmd) {
            if (!is_lossless_extension(out_path)) {
                err << "error: output must be .png or .bmp\n";
                return kLossy;
            }
            nlohmann::json spec = {{"mode", mode_name}};
            if (*zone_opt) spec["zone"] = zone;
            if (*rect_opt) spec["rect"] = split_ints(rect_text, 4, "--rect");
            if (mode_name == "constant") spec["value"] = value;
            if (mode_name == "copy") spec["source"] = split_ints(source_text, 2, "--source");
            if (mode_name == "swap") {
                const auto comma = channels_text.find(',');
                if (comma == std::string::npos) throw Error(ErrorCode::InvalidArgument, "--channels needs two planes");
                spec["channels"] = {channels_text.substr(0, comma), channels_text.substr(comma + 1)};
            }
            spec["seed"] = seed;
            const AttackSpec attack = parse_attack(spec);
            const RgbImage input = load_image(in_path);
            const Rect region = attack_region(input, attack);
            save_image(out_path, apply_attack(input, attack));
            out << "wrote " << out_path << " (" << attack.label() << ", region x=" << region.x << " y=" << region.y
                << " w=" << region.w << " h=" << region.h << ")\n";
            return kOk;
        }

        if (*bench_cmd) {
            std::vector<NamedImage> images;
            if (synthetic) {
                images = standard_test_images();
            } else {
                if (images_dir.empty()) throw Error(ErrorCode::InvalidArgument, "bench needs --images DIR or --synthetic");
                std::vector<fs::path> files;
                std::error_code ec;
                for (const auto& entry : fs::directory_iterator(images_dir, ec)) {
                    if (entry.is_regular_file()) files.push_back(entry.path());
                }
                if (ec) throw Error(ErrorCode::IoError, "cannot list " + images_dir);
                std::sort(files.begin(), files.end());
                for (const auto& f : files) {
                    try {
                        images.push_back({f.filename().string(), load_image(f)});
                    } catch (const Error&) {
                        err << "skipping " << f.filename().string() << " (not a decodable image)\n";
                    }
                }
                if (images.empty()) {
                    err << "error: no decodable images in " << images_dir << '\n';
                    return kIoError;
                }
            }
            std::vector<std::string> names;
            if (scenarios_text == "all") {
                names = all_scenario_names();
            } else {
                std::stringstream ss(scenarios_text);
                std::string item;
                while (std::getline(ss, item, ',')) names.push_back(item);
            }
            std::vector<ScenarioConfig> scenarios;
            for (const auto& n : names) scenarios.push_back(ScenarioConfig::parse(n));
            const CameraId id = camera.empty() && !std::getenv("IMGAUTH_CAMERA_ID") ? CameraId::from_text("acef")
                                                                                   : resolve_camera(camera);

            std::string csv = "image,width,height,scenario," + csv_header() + "\n";
            std::vector<std::string> checks;
            for (const auto& img : images) {
                std::map<std::string, MetricSet> per;
                for (const auto& sc : scenarios) {
                    const QualityReport q = assess_quality(img.image, embed(img.image, id, sc));
                    per[sc.name] = q.joint;
                    csv += img.name + "," + std::to_string(img.image.width()) + "," +
                           std::to_string(img.image.height()) + "," + sc.name + "," + csv_fields(q.joint) + "\n";
                }
                const auto lines = check_orderings(per, img.name);
                checks.insert(checks.end(), lines.begin(), lines.end());
            }
            std::ostream& report = bench_out.empty() ? err : out;
            if (bench_out.empty()) out << csv;
            else write_text(bench_out, csv);
            for (const auto& line : checks) report << line << '\n';
            return kOk;
        }

        if (*synth_cmd) {
            fs::create_directories(synth_dir);
            for (const auto& img : standard_test_images()) save_image(fs::path(synth_dir) / (img.name + ".png"), img.image);
            save_image(fs::path(synth_dir) / "scene.png", attack_scene_image());
            out << "wrote A.png B.png C.png scene.png to " << synth_dir << '\n';
            return kOk;
        }

        if (*campaign_cmd) {
            nlohmann::json doc;
            try {
                doc = nlohmann::json::parse(read_file(campaign_path));
            } catch (const nlohmann::json::exception& e) {
                throw Error(ErrorCode::InvalidArgument, std::string("campaign file: ") + e.what());
            }
            const CampaignConfig cfg = parse_campaign(doc);
            const RgbImage image = resolve_image(cfg.image, fs::path(campaign_path).parent_path());
            std::vector<ScenarioConfig> scenarios;
            for (const auto& n : cfg.scenarios) scenarios.push_back(ScenarioConfig::parse(n));
            const DetectionReport rep =
                run_campaign(image, CameraId::from_text(cfg.camera_id), scenarios, cfg.attacks, cfg.tolerance);
            const std::string text = format == "json" ? rep.to_json().dump(2) + "\n" : rep.to_csv();
            if (campaign_out.empty()) out << text;
            else write_text(campaign_out, text);
            return kOk;
        }

        if (*cal_cmd) {
            const CalibrationResult r = calibrate_tolerance(cal);
            if (format == "json") {
                nlohmann::json per = nlohmann::json::array();
                for (const auto& d : r.per_scenario) {
                    per.push_back({{"scenario", d.scenario}, {"blocks", d.blocks}, {"max_deviation", d.max_deviation}});
                }
                out << nlohmann::json{{"tolerance", r.tolerance},
                                      {"max_deviation", r.max_deviation},
                                      {"default_tolerance", kDefaultTolerance},
                                      {"per_scenario", per}}
                           .dump(2)
                    << '\n';
            } else {
                char buf[128];
                for (const auto& d : r.per_scenario) {
                    std::snprintf(buf, sizeof buf, "%-4s blocks=%zu max_deviation=%.3e\n", d.scenario.c_str(), d.blocks,
                                  d.max_deviation);
                    out << buf;
                }
                std::snprintf(buf, sizeof buf, "tolerance=%.3e (default %.3e)\n", r.tolerance, kDefaultTolerance);
                out << buf;
            }
            return kOk;
        }

        if (*serve_cmd) {
            const ServiceConfig cfg =
                ServiceConfig::load(config_path.empty() ? std::nullopt : std::optional<fs::path>(config_path));
            PasService service(cfg);
            const int port = service.start();
            err << "listening on " << cfg.host << ':' << port << '\n';
            g_service = &service;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            service.run();
            g_service = nullptr;
            return kOk;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
    return kUsage;
}

}  // namespace imgauth::cli
