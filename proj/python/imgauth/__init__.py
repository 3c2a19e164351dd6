# Copyright 2026 The imgauth Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
# SPDX-License-Identifier: Apache-2.0

"""Fragile colour-image watermarking bindings.

Images are numpy arrays of shape (height, width, 3), dtype uint8, RGB order.
"""

import json

from . import _core
from ._core import DEFAULT_TOLERANCE, Error, derive_photo_id, embed, scenarios, zone_rect

__all__ = [
    "DEFAULT_TOLERANCE",
    "Error",
    "attack",
    "derive_photo_id",
    "embed",
    "quality",
    "scenarios",
    "verify",
    "zone_rect",
]


def verify(image, camera_id, scenario, tolerance=DEFAULT_TOLERANCE):
    """Verification report as a dict (authentic, photo_id, rects, ...)."""
    return json.loads(_core.verify_json(image, camera_id, scenario, tolerance))


def quality(original, processed):
    """MAE, MSE, PSNR, SSIM and UIQI, joint and per channel."""
    report = json.loads(_core.quality_json(original, processed))
    for part in report.values():
        if part["psnr"] == "inf":
            part["psnr"] = float("inf")
    return report


def attack(image, mode, **spec):
    """Apply an attack: mode is blackout, constant, copy, swap or noise.

    Keyword arguments follow the campaign schema: rect=(x, y, w, h) or
    zone=1..4, value=, source=(x, y), channels=("red", "blue"), seed=.
    """
    doc = {"mode": mode}
    for key, value in spec.items():
        doc[key] = list(value) if isinstance(value, tuple) else value
    return _core.attack_json(image, json.dumps(doc))
