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

#include "staticdet/color.hpp"

#include <algorithm>
#include <cmath>

namespace sdet {

namespace {

void check_unit(double v, const char* name) {
  require(std::isfinite(v) && v >= 0.0 && v <= 1.0, name, " component ", v,
          " outside [0, 1]");
}

// sRGB gamma expansion (IEC 61966-2-1).
double srgb_to_linear(double c) {
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

}  // namespace

Hsv rgb_to_hsv(const Rgb& c) {
  check_unit(c.r, "rgb r");
  check_unit(c.g, "rgb g");
  check_unit(c.b, "rgb b");
  double mx = std::max({c.r, c.g, c.b});
  double mn = std::min({c.r, c.g, c.b});
  double d = mx - mn;
  Hsv out;
  out.v = mx;
  if (d <= 0.0) return out;  // gray: h = 0, s = 0
  out.s = d / mx;
  double h;
  if (mx == c.r)
    h = 60.0 * ((c.g - c.b) / d);
  else if (mx == c.g)
    h = 60.0 * ((c.b - c.r) / d + 2.0);
  else
    h = 60.0 * ((c.r - c.g) / d + 4.0);
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h -= 360.0;
  out.h = h;
  return out;
}

Rgb hsv_to_rgb(const Hsv& c) {
  require(std::isfinite(c.h) && c.h >= 0.0 && c.h < 360.0, "hue ", c.h,
          " outside [0, 360)");
  check_unit(c.s, "hsv s");
  check_unit(c.v, "hsv v");
  double hh = c.h / 60.0;
  int sector = static_cast<int>(hh) % 6;
  double f = hh - std::floor(hh);
  double p = c.v * (1.0 - c.s);
  double q = c.v * (1.0 - c.s * f);
  double t = c.v * (1.0 - c.s * (1.0 - f));
  switch (sector) {
    case 0: return {c.v, t, p};
    case 1: return {q, c.v, p};
    case 2: return {p, c.v, t};
    case 3: return {p, q, c.v};
    case 4: return {t, p, c.v};
    default: return {c.v, p, q};
  }
}

double rgb_to_lab_l(const Rgb& c) {
  check_unit(c.r, "rgb r");
  check_unit(c.g, "rgb g");
  check_unit(c.b, "rgb b");
  // D65 luminance; these coefficients sum to exactly 1 so white gives Y = 1.
  double y = 0.2126 * srgb_to_linear(c.r) + 0.7152 * srgb_to_linear(c.g) +
             0.0722 * srgb_to_linear(c.b);
  // CIE f(t) with the 6/29 knee, reference white Yn = 1.
  constexpr double kDelta3 = 216.0 / 24389.0;   // (6/29)^3
  constexpr double kKappa = 24389.0 / 27.0;     // (29/3)^3
  double fy = y > kDelta3 ? std::cbrt(y) : (kKappa * y + 16.0) / 116.0;
  double l = 116.0 * fy - 16.0;
  return std::clamp(l / 100.0, 0.0, 1.0);
}

Frame luma_frame(const Frame& f) {
  f.validate("luma input");
  Frame out(f.width, f.height, 1);
  if (f.channels == 1) {
    for (std::size_t i = 0; i < f.data.size(); ++i) {
      double v = f.data[i];
      out.data[i] = rgb_to_lab_l({v, v, v});
    }
  } else {
    for (std::size_t i = 0, j = 0; j < f.data.size(); ++i, j += 3)
      out.data[i] = rgb_to_lab_l({f.data[j], f.data[j + 1], f.data[j + 2]});
  }
  return out;
}

}  // namespace sdet
