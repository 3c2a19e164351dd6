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
#include <map>
#include <shared_mutex>
#include <string>

#include "imgauth/crypto.hpp"

namespace imgauth {

struct CidrRecord {
    PhotoId photo_id;
    CameraId camera_id;
    std::string registered_at;  // UTC, YYYY-MM-DDTHH:MM:SSZ
};

/// Append-only camera register: photo ID -> camera ID, persisted as one JSON
/// object per line. The log is replayed into an in-memory index on open.
///
/// Readers share a lock; register_camera() appends and fsyncs under an
/// exclusive one. The file is created with mode 0600.
class CidrStore {
public:
    /// Opens or creates the log. A torn final line (crash mid-append) is cut
    /// off; any other malformed line throws StoreError.
    explicit CidrStore(std::filesystem::path path);
    ~CidrStore();

    CidrStore(const CidrStore&) = delete;
    CidrStore& operator=(const CidrStore&) = delete;

    /// Throws AlreadyRegistered for a known photo ID, StoreError on write
    /// failure.
    CidrRecord register_camera(const CameraId& camera_id);

    /// Throws NotFound.
    CameraId lookup(const PhotoId& photo_id) const;
    bool contains(const PhotoId& photo_id) const;

    std::size_t size() const;
    /// The log file is still present on disk.
    bool healthy() const;
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    void replay();

    std::filesystem::path path_;
    int fd_ = -1;
    mutable std::shared_mutex mutex_;
    std::map<PhotoId, CidrRecord> index_;
};

/// One log line (without the trailing newline). Camera IDs that are not
/// valid UTF-8 are written as "camera_id_hex".
std::string format_cidr_record(const CidrRecord& record);
/// Throws StoreError on grammar or digest-consistency violations.
CidrRecord parse_cidr_record(const std::string& line);

}  // namespace imgauth
