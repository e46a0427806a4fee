// Copyright 2026 the staticdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "staticdet/frame.hpp"

namespace sdet {

struct Rgb {
  double r = 0.0, g = 0.0, b = 0.0;
};

/// Hue in degrees [0, 360), saturation and value in [0, 1].
struct Hsv {
  double h = 0.0, s = 0.0, v = 0.0;
};

/// Hexcone HSV. Gray inputs (max = min) get h = 0, s = 0.
/// Pre: components in [0, 1].
Hsv rgb_to_hsv(const Rgb& c);

/// Inverse hexcone mapping. Pre: h in [0, 360), s and v in [0, 1].
Rgb hsv_to_rgb(const Hsv& c);

/// CIE L* of an sRGB (D65) color, rescaled from [0, 100] to [0, 1].
/// Pre: components in [0, 1].
double rgb_to_lab_l(const Rgb& c);

/// Per-pixel rgb_to_lab_l of a 3-channel frame; a 1-channel frame is treated
/// as gray (v,v,v) so both input kinds land on the same tonal scale.
Frame luma_frame(const Frame& f);

}  // namespace sdet
