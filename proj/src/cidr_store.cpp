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

#include "imgauth/cidr_store.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>
#include <fstream>
#include <iterator>
#include <mutex>
#include <optional>

#include <nlohmann/json.hpp>

#include "imgauth/error.hpp"

namespace imgauth {
namespace {

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

bool valid_utf8(const std::vector<std::uint8_t>& s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const std::uint8_t c = s[i];
        int extra;
        std::uint32_t cp;
        if (c < 0x80) {
            ++i;
            continue;
        } else if ((c & 0xE0) == 0xC0) {
            extra = 1;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            extra = 2;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            extra = 3;
            cp = c & 0x07;
        } else {
            return false;
        }
        if (i + static_cast<std::size_t>(extra) >= s.size()) return false;
        for (int k = 1; k <= extra; ++k) {
            if ((s[i + k] & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (s[i + k] & 0x3F);
        }
        const std::uint32_t min = extra == 1 ? 0x80 : extra == 2 ? 0x800 : 0x10000;
        if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
        i += static_cast<std::size_t>(extra) + 1;
    }
    return true;
}

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
    static const char* digits = "0123456789ABCDEF";
    std::string out;
    for (auto b : bytes) {
        out += digits[b >> 4];
        out += digits[b & 15];
    }
    return out;
}

std::vector<std::uint8_t> from_hex(const std::string& hex) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        return -1;
    };
    if (hex.size() % 2 != 0) throw Error(ErrorCode::StoreError, "odd-length camera_id_hex");
    std::vector<std::uint8_t> out;
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        const int hi = nibble(hex[i]);
        const int lo = nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) throw Error(ErrorCode::StoreError, "bad camera_id_hex");
        out.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
    }
    return out;
}

bool write_all(int fd, const std::string& data) {
    std::size_t done = 0;
    while (done < data.size()) {
        const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
        if (n < 0) {
            if (errno == EINTR) continue;
            return false;
        }
        done += static_cast<std::size_t>(n);
    }
    return true;
}

}  // namespace

std::string format_cidr_record(const CidrRecord& record) {
    nlohmann::ordered_json j;
    j["photo_id"] = record.photo_id.hex();
    if (valid_utf8(record.camera_id.bytes())) j["camera_id"] = record.camera_id.text();
    else j["camera_id_hex"] = to_hex(record.camera_id.bytes());
    j["registered_at"] = record.registered_at;
    return j.dump();
}

CidrRecord parse_cidr_record(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorCode::StoreError, "record is not valid JSON");
    }
    try {
        const bool text = j.contains("camera_id");
        const bool hex = j.contains("camera_id_hex");
        if (!j.is_object() || text == hex) throw Error(ErrorCode::StoreError, "record needs one camera id field");
        CameraId camera = text ? CameraId::from_text(j.at("camera_id").get<std::string>())
                               : CameraId::from_bytes(from_hex(j.at("camera_id_hex").get<std::string>()));
        const PhotoId photo = PhotoId::from_hex(j.at("photo_id").get<std::string>());
        if (photo != derive_photo_id(camera)) throw Error(ErrorCode::StoreError, "photo_id does not match camera id");
        return {photo, std::move(camera), j.at("registered_at").get<std::string>()};
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorCode::StoreError, "record has missing or mistyped fields");
    } catch (const Error& e) {
        if (e.code() == ErrorCode::StoreError) throw;
        throw Error(ErrorCode::StoreError, std::string("record field invalid: ") + e.what());
    }
}

CidrStore::CidrStore(std::filesystem::path path) : path_(std::move(path)) {
    fd_ = ::open(path_.c_str(), O_CREAT | O_RDWR | O_APPEND | O_CLOEXEC, 0600);
    if (fd_ < 0) throw Error(ErrorCode::StoreError, "cannot open store: " + std::string(std::strerror(errno)));
    try {
        replay();
    } catch (...) {
        ::close(fd_);
        throw;
    }
}

CidrStore::~CidrStore() {
    if (fd_ >= 0) ::close(fd_);
}

void CidrStore::replay() {
    std::ifstream in(path_, std::ios::binary);
    const std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    std::size_t pos = 0;
    std::size_t good_end = 0;
    std::size_t line_no = 0;
    while (pos < content.size()) {
        const std::size_t nl = content.find('\n', pos);
        ++line_no;
        if (nl == std::string::npos) break;  // unterminated tail: torn append
        const std::string line = content.substr(pos, nl - pos);
        pos = nl + 1;
        good_end = pos;
        if (line.empty()) continue;
        std::optional<CidrRecord> rec;
        try {
            rec = parse_cidr_record(line);
        } catch (const Error& e) {
            throw Error(ErrorCode::StoreError, "line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!index_.emplace(rec->photo_id, *rec).second) {
            throw Error(ErrorCode::StoreError, "line " + std::to_string(line_no) + ": duplicate photo_id");
        }
    }
    if (good_end < content.size()) {
        if (::ftruncate(fd_, static_cast<off_t>(good_end)) != 0) {
            throw Error(ErrorCode::StoreError, "cannot cut torn record: " + std::string(std::strerror(errno)));
        }
    }
}

CidrRecord CidrStore::register_camera(const CameraId& camera_id) {
    CidrRecord rec{derive_photo_id(camera_id), camera_id, utc_now()};
    std::unique_lock lock(mutex_);
    if (index_.contains(rec.photo_id)) throw Error(ErrorCode::AlreadyRegistered, "photo ID already registered");
    if (!write_all(fd_, format_cidr_record(rec) + "\n") || ::fsync(fd_) != 0) {
        throw Error(ErrorCode::StoreError, "append failed: " + std::string(std::strerror(errno)));
    }
    index_.emplace(rec.photo_id, rec);
    return rec;
}

CameraId CidrStore::lookup(const PhotoId& photo_id) const {
    std::shared_lock lock(mutex_);
    const auto it = index_.find(photo_id);
    if (it == index_.end()) throw Error(ErrorCode::NotFound, "photo ID not registered");
    return it->second.camera_id;
}

bool CidrStore::contains(const PhotoId& photo_id) const {
    std::shared_lock lock(mutex_);
    return index_.contains(photo_id);
}

std::size_t CidrStore::size() const {
    std::shared_lock lock(mutex_);
    return index_.size();
}

bool CidrStore::healthy() const {
    std::error_code ec;
    return std::filesystem::is_regular_file(path_, ec);
}

}  // namespace imgauth
