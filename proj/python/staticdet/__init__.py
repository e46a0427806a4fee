# Copyright 2026 the staticdet authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Static-object detection in video via dual-foreground fusion.

Thin Python facade over the C++ core: preprocessing (illumination
equalization, dark-channel dehazing), a mixture-of-Gaussians background
model, dual-foreground fusion with convex-hull reporting, plus the full
file-based pipeline, synthetic-sequence generation, and mask scoring.
"""

from _staticdet import (
    BackgroundModel,
    __version__,
    compute_iou,
    dark_channel,
    dehaze,
    detect,
    evaluate,
    generate,
    illumination_equalize,
    luma,
    run,
    subtract_masks,
    threshold_mask,
)

__all__ = [
    "BackgroundModel",
    "__version__",
    "compute_iou",
    "dark_channel",
    "dehaze",
    "detect",
    "evaluate",
    "generate",
    "illumination_equalize",
    "luma",
    "run",
    "subtract_masks",
    "threshold_mask",
]
