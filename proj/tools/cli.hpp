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

#include <ostream>

namespace imgauth::cli {

/// Process exit codes; a stable contract.
enum Exit : int {
    kOk = 0,          // success / authentic
    kTampered = 1,    // verification failed or photo ID unknown
    kIoError = 2,     // unreadable input, write failure, empty bench directory
    kTooSmall = 3,    // image holds fewer than 160 pixels
    kLossy = 4,       // output extension is not lossless
    kUsage = 5,       // bad flags, unknown scenario, region out of bounds
    kUnreachable = 6, // --server could not be contacted
};

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace imgauth::cli
