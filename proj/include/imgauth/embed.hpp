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

#include "imgauth/crypto.hpp"
#include "imgauth/image.hpp"
#include "imgauth/scenario.hpp"

namespace imgauth {

/// Runs the spatial or frequency embedder selected by `scenario`.
RgbImage embed(const RgbImage& image, const CameraId& camera_id, const ScenarioConfig& scenario);

}  // namespace imgauth
