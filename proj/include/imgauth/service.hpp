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

#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "imgauth/cidr_store.hpp"

namespace imgauth {

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::filesystem::path cidr_path = "cidr.ndjson";
    /// Bearer token for POST /cameras; empty disables registration.
    std::string admin_token;
    std::size_t max_upload_bytes = 32u << 20;
    int timeout_seconds = 30;

    /// Reads an optional JSON config file, then applies IMGAUTH_HOST,
    /// IMGAUTH_PORT, IMGAUTH_CIDR_PATH, IMGAUTH_ADMIN_TOKEN,
    /// IMGAUTH_MAX_UPLOAD_BYTES and IMGAUTH_TIMEOUT_SECONDS from `env`
    /// (defaults to std::getenv). Throws InvalidArgument on bad values.
    static ServiceConfig load(const std::optional<std::filesystem::path>& file,
                              const std::function<const char*(const char*)>& env = {});
};

struct HttpResult {
    int status = 200;
    nlohmann::json body;
};

/// Fields of a POST /verify form. `camera_id` is the private-mode key
/// material (also accepted as "private_key_material" on the wire).
struct VerifyForm {
    std::string image;
    std::optional<std::string> scenario;
    std::optional<std::string> mode;  // public (default) | private | hybrid
    std::optional<std::string> camera_id;
    std::optional<std::string> tolerance;
    std::optional<std::string> image_class;  // hybrid: permanent (default) | temporary
};

using LogSink = std::function<void(const std::string&)>;

/// Request handling for the authentication server. Handlers are plain
/// methods so they can be exercised without sockets; serve() wires them to
/// HTTP. Camera IDs never reach a response body or the log sink.
class PasService {
public:
    explicit PasService(ServiceConfig config, LogSink log = {});
    ~PasService();

    HttpResult handle_register(const std::string& authorization, const std::string& body);
    HttpResult handle_verify(const VerifyForm& form);
    HttpResult handle_health() const;

    /// Binds the configured address (port 0 picks a free port) and returns
    /// the bound port; throws IoError when binding fails.
    int start();
    /// Blocks serving requests until stop().
    void run();
    void stop();

    const ServiceConfig& config() const noexcept { return config_; }
    CidrStore& store() noexcept { return *store_; }

private:
    void log(const std::string& line) const;

    ServiceConfig config_;
    LogSink log_;
    std::unique_ptr<CidrStore> store_;
    struct Server;
    std::unique_ptr<Server> server_;
};

/// POSTs `image_bytes` to `<base_url>/verify` in public mode. Returns the
/// status and parsed body; throws Unreachable when no connection can be
/// made.
HttpResult post_verify(const std::string& base_url, const std::string& image_bytes, const std::string& filename,
                       const std::string& scenario, const std::optional<double>& tolerance = std::nullopt,
                       int timeout_seconds = 30);

}  // namespace imgauth
