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

#include "staticdet/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace sdet {

namespace {

void check_equalization_dims(const EqualizationParams& params, int width,
                             int height) {
  require(params.p >= 1 && params.q >= 1, "equalization extents must be >= 1, got p=",
          params.p, " q=", params.q);
  require(2 * params.p + 1 <= height, "equalization region height ",
          2 * params.p + 1, " exceeds image height ", height);
  require(2 * params.q + 1 <= width, "equalization region width ",
          2 * params.q + 1, " exceeds image width ", width);
}

// Mean of column x over rows [y0, y1].
double column_mean(const Frame& f, int x, int y0, int y1) {
  double s = 0.0;
  for (int y = y0; y <= y1; ++y) s += f.at(x, y);
  return s / (y1 - y0 + 1);
}

// Mean of row y over columns [x0, x1].
double row_mean(const Frame& f, int y, int x0, int x1) {
  double s = 0.0;
  for (int x = x0; x <= x1; ++x) s += f.at(x, y);
  return s / (x1 - x0 + 1);
}

// Per-pixel minimum across channels; no value-range validation so it can run
// on internal buffers that exceed [0,1].
std::vector<double> channel_min(const Frame& f) {
  std::vector<double> out(f.pixel_count());
  if (f.channels == 1) {
    out.assign(f.data.begin(), f.data.end());
  } else {
    for (std::size_t i = 0, j = 0; i < out.size(); ++i, j += 3)
      out[i] = std::min({f.data[j], f.data[j + 1], f.data[j + 2]});
  }
  return out;
}

// Separable min filter over the (2r+1)^2 patch truncated at the border.
std::vector<double> patch_min(const std::vector<double>& in, int w, int h,
                              int r) {
  if (r == 0) return in;
  std::vector<double> tmp(in.size()), out(in.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double m = std::numeric_limits<double>::infinity();
      int x0 = std::max(0, x - r), x1 = std::min(w - 1, x + r);
      for (int xx = x0; xx <= x1; ++xx)
        m = std::min(m, in[static_cast<std::size_t>(y) * w + xx]);
      tmp[static_cast<std::size_t>(y) * w + x] = m;
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double m = std::numeric_limits<double>::infinity();
      int y0 = std::max(0, y - r), y1 = std::min(h - 1, y + r);
      for (int yy = y0; yy <= y1; ++yy)
        m = std::min(m, tmp[static_cast<std::size_t>(yy) * w + x]);
      out[static_cast<std::size_t>(y) * w + x] = m;
    }
  }
  return out;
}

// Box mean over the (2r+1)^2 window truncated at the border, via a
// prefix-sum table built once.
std::vector<double> box_mean(const std::vector<double>& in, int w, int h,
                             int r) {
  if (r == 0) return in;
  // sat(x, y) = sum of in over [0, x) x [0, y)
  std::vector<double> sat(static_cast<std::size_t>(w + 1) * (h + 1), 0.0);
  for (int y = 0; y < h; ++y) {
    double row = 0.0;
    for (int x = 0; x < w; ++x) {
      row += in[static_cast<std::size_t>(y) * w + x];
      sat[static_cast<std::size_t>(y + 1) * (w + 1) + (x + 1)] =
          sat[static_cast<std::size_t>(y) * (w + 1) + (x + 1)] + row;
    }
  }
  std::vector<double> out(in.size());
  auto rect_sum = [&](int x0, int y0, int x1, int y1) {
    return sat[static_cast<std::size_t>(y1 + 1) * (w + 1) + (x1 + 1)] -
           sat[static_cast<std::size_t>(y0) * (w + 1) + (x1 + 1)] -
           sat[static_cast<std::size_t>(y1 + 1) * (w + 1) + x0] +
           sat[static_cast<std::size_t>(y0) * (w + 1) + x0];
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int x0 = std::max(0, x - r), x1 = std::min(w - 1, x + r);
      int y0 = std::max(0, y - r), y1 = std::min(h - 1, y + r);
      double area = static_cast<double>(x1 - x0 + 1) * (y1 - y0 + 1);
      out[static_cast<std::size_t>(y) * w + x] = rect_sum(x0, y0, x1, y1) / area;
    }
  }
  return out;
}

}  // namespace

Frame crop_roi(const Frame& f, const Roi& roi) {
  f.validate("crop input");
  require(roi.width > 0 && roi.height > 0, "roi must be non-empty, got ",
          roi.width, "x", roi.height);
  require(roi.x >= 0 && roi.y >= 0 && roi.x + roi.width <= f.width &&
              roi.y + roi.height <= f.height,
          "roi [", roi.x, ", ", roi.y, ", ", roi.width, ", ", roi.height,
          "] leaves the ", f.width, "x", f.height, " frame");
  Frame out(roi.width, roi.height, f.channels);
  for (int y = 0; y < roi.height; ++y)
    for (int x = 0; x < roi.width; ++x)
      for (int c = 0; c < f.channels; ++c)
        out.at(x, y, c) = f.at(roi.x + x, roi.y + y, c);
  return out;
}

EdgeMeans edge_means(const Frame& luma, const EqualizationParams& params,
                     int index) {
  require(luma.channels == 1, "edge_means expects a single-channel frame, got ",
          luma.channels, " channels");
  check_equalization_dims(params, luma.width, luma.height);
  require(index >= 0 && index < std::max(luma.width, luma.height), "index ",
          index, " outside the ", luma.width, "x", luma.height, " image");
  const int p = params.p, q = params.q;
  const int m = luma.height, n = luma.width;
  EdgeMeans out;
  // Left/right: region centered on row clamp(index) and the image's center
  // column; its left and right columns sit 2q apart.
  int rc = std::clamp(index, p, m - 1 - p);
  int jc = (n - 1) / 2;
  out.left = column_mean(luma, jc - q, rc - p, rc + p);
  out.right = column_mean(luma, jc + q, rc - p, rc + p);
  // Top/bottom: region centered on column clamp(index) and the center row.
  int cc = std::clamp(index, q, n - 1 - q);
  int ir = (m - 1) / 2;
  out.top = row_mean(luma, ir - p, cc - q, cc + q);
  out.bottom = row_mean(luma, ir + p, cc - q, cc + q);
  return out;
}

Frame equalize_horizontal(const Frame& luma, const EqualizationParams& params) {
  luma.validate("equalize_horizontal input");
  require(luma.channels == 1, "equalize_horizontal expects a single channel, got ",
          luma.channels);
  require(luma.width >= 2,
          "equalize_horizontal needs width >= 2, the column coefficient is "
          "undefined for width ", luma.width);
  check_equalization_dims(params, luma.width, luma.height);
  const int p = params.p, q = params.q;
  const int m = luma.height, n = luma.width;
  const int jc = (n - 1) / 2;
  const int jl = jc - q, jr = jc + q;
  // Prefix sums over the two edge columns: all row means become O(1).
  std::vector<double> sl(m + 1, 0.0), sr(m + 1, 0.0);
  for (int y = 0; y < m; ++y) {
    sl[y + 1] = sl[y] + luma.at(jl, y);
    sr[y + 1] = sr[y] + luma.at(jr, y);
  }
  Frame out(n, m, 1);
  const double denom = 2.0 * (n - 1);
  for (int i = 0; i < m; ++i) {
    int rc = std::clamp(i, p, m - 1 - p);
    double left = (sl[rc + p + 1] - sl[rc - p]) / (2 * p + 1);
    double right = (sr[rc + p + 1] - sr[rc - p]) / (2 * p + 1);
    double d = right - left;
    for (int j = 0; j < n; ++j) {
      double a = (n - 2 * j - 1) / denom;
      out.at(j, i) = std::clamp(luma.at(j, i) + a * d, 0.0, 1.0);
    }
  }
  return out;
}

Frame equalize_vertical(const Frame& luma, const EqualizationParams& params) {
  luma.validate("equalize_vertical input");
  require(luma.channels == 1, "equalize_vertical expects a single channel, got ",
          luma.channels);
  require(luma.height >= 2,
          "equalize_vertical needs height >= 2, the row coefficient is "
          "undefined for height ", luma.height);
  check_equalization_dims(params, luma.width, luma.height);
  const int p = params.p, q = params.q;
  const int m = luma.height, n = luma.width;
  const int ir = (m - 1) / 2;
  const int it = ir - p, ib = ir + p;
  std::vector<double> st(n + 1, 0.0), sb(n + 1, 0.0);
  for (int x = 0; x < n; ++x) {
    st[x + 1] = st[x] + luma.at(x, it);
    sb[x + 1] = sb[x] + luma.at(x, ib);
  }
  Frame out(n, m, 1);
  const double denom = 2.0 * (m - 1);
  for (int i = 0; i < m; ++i) {
    double a = (m - 2 * i - 1) / denom;
    for (int j = 0; j < n; ++j) {
      int cc = std::clamp(j, q, n - 1 - q);
      double top = (st[cc + q + 1] - st[cc - q]) / (2 * q + 1);
      double bottom = (sb[cc + q + 1] - sb[cc - q]) / (2 * q + 1);
      out.at(j, i) = std::clamp(luma.at(j, i) + a * (bottom - top), 0.0, 1.0);
    }
  }
  return out;
}

Frame illumination_equalize(const Frame& f, const EqualizationParams& params) {
  f.validate("illumination_equalize input");
  require(f.channels == 3, "illumination_equalize expects an RGB frame, got ",
          f.channels, " channel(s)");
  check_equalization_dims(params, f.width, f.height);
  Frame value(f.width, f.height, 1);
  std::vector<Hsv> hsv(f.pixel_count());
  for (std::size_t i = 0, j = 0; i < hsv.size(); ++i, j += 3) {
    hsv[i] = rgb_to_hsv({f.data[j], f.data[j + 1], f.data[j + 2]});
    value.data[i] = hsv[i].v;
  }
  Frame corrected = equalize_vertical(equalize_horizontal(value, params), params);
  Frame out(f.width, f.height, 3);
  for (std::size_t i = 0, j = 0; i < hsv.size(); ++i, j += 3) {
    Rgb c = hsv_to_rgb({hsv[i].h, hsv[i].s, corrected.data[i]});
    out.data[j] = c.r;
    out.data[j + 1] = c.g;
    out.data[j + 2] = c.b;
  }
  return out;
}

Frame dark_channel(const Frame& f, int patch_radius) {
  f.validate("dark_channel input");
  require(patch_radius >= 0, "patch radius must be >= 0, got ", patch_radius);
  std::vector<double> dark = patch_min(channel_min(f), f.width, f.height,
                                       patch_radius);
  Frame out(f.width, f.height, 1);
  out.data = std::move(dark);
  return out;
}

Rgb estimate_atmospheric_light(const Frame& f, const Frame& dark,
                               double fraction) {
  f.validate("airlight source frame");
  require(dark.channels == 1, "dark channel must be single-channel, got ",
          dark.channels);
  require(dark.width == f.width && dark.height == f.height,
          "dark channel ", dark.width, "x", dark.height,
          " does not match frame ", f.width, "x", f.height);
  require(std::isfinite(fraction) && fraction > 0.0 && fraction <= 1.0,
          "airlight fraction ", fraction, " outside (0, 1]");
  const std::size_t n = f.pixel_count();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dark.data[a] > dark.data[b];
  });
  std::size_t k = static_cast<std::size_t>(std::llround(fraction * n));
  k = std::clamp<std::size_t>(k, 1, n);
  Rgb sum;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t px = order[i];
    if (f.channels == 1) {
      double v = f.data[px];
      sum.r += v;
      sum.g += v;
      sum.b += v;
    } else {
      sum.r += f.data[px * 3];
      sum.g += f.data[px * 3 + 1];
      sum.b += f.data[px * 3 + 2];
    }
  }
  return {sum.r / k, sum.g / k, sum.b / k};
}

DehazeResult dehaze_detailed(const Frame& f, const DehazeParams& params) {
  f.validate("dehaze input");
  require(params.patch_radius >= 0, "patch radius must be >= 0, got ",
          params.patch_radius);
  require(params.omega >= 0.0 && params.omega <= 1.0, "omega ", params.omega,
          " outside [0, 1]");
  require(params.t_floor > 0.0 && params.t_floor <= 1.0, "t_floor ",
          params.t_floor, " outside (0, 1]");
  require(params.airlight_fraction > 0.0 && params.airlight_fraction <= 1.0,
          "airlight fraction ", params.airlight_fraction, " outside (0, 1]");

  const int w = f.width, h = f.height;
  Frame dark = dark_channel(f, params.patch_radius);
  Rgb a = estimate_atmospheric_light(f, dark, params.airlight_fraction);
  const double ac[3] = {a.r, a.g, a.b};

  // Dark channel of the airlight-normalized frame; channels with zero
  // airlight carry no haze information and are excluded from the minimum.
  std::vector<double> norm(f.pixel_count(),
                           std::numeric_limits<double>::infinity());
  for (std::size_t px = 0; px < f.pixel_count(); ++px) {
    if (f.channels == 1) {
      if (ac[0] > 0.0) norm[px] = f.data[px] / ac[0];
    } else {
      for (int c = 0; c < 3; ++c)
        if (ac[c] > 0.0)
          norm[px] = std::min(norm[px], f.data[px * 3 + c] / ac[c]);
    }
  }
  Frame transmission(w, h, 1);
  bool any_channel = (f.channels == 1) ? ac[0] > 0.0
                                       : (ac[0] > 0.0 || ac[1] > 0.0 || ac[2] > 0.0);
  if (!any_channel) {
    transmission.data.assign(transmission.data.size(), 1.0);
  } else {
    std::vector<double> dark_norm = patch_min(norm, w, h, params.patch_radius);
    for (std::size_t i = 0; i < dark_norm.size(); ++i)
      transmission.data[i] =
          std::clamp(1.0 - params.omega * dark_norm[i], 0.0, 1.0);
    transmission.data = box_mean(transmission.data, w, h, params.patch_radius);
  }

  Frame out(w, h, f.channels);
  for (std::size_t px = 0; px < f.pixel_count(); ++px) {
    double t = std::max(transmission.data[px], params.t_floor);
    for (int c = 0; c < f.channels; ++c) {
      double i = f.data[px * f.channels + c];
      double air = (f.channels == 1) ? ac[0] : ac[c];
      // t = 1 recovers the input; taking the identity branch keeps that exact
      // in floating point ((i - a) + a need not round back to i).
      double j = (air > 0.0 && t < 1.0) ? (i - air) / t + air : i;
      out.data[px * f.channels + c] = std::clamp(j, 0.0, 1.0);
    }
  }
  return {std::move(out), std::move(transmission), a};
}

Frame dehaze(const Frame& f, const DehazeParams& params) {
  return dehaze_detailed(f, params).output;
}

}  // namespace sdet
