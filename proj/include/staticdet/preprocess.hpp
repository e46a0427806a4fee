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

#include "staticdet/color.hpp"
#include "staticdet/frame.hpp"

namespace sdet {

struct Roi {
  int x = 0, y = 0, width = 0, height = 0;
};

/// Half-extents of the (2p+1) x (2q+1) local region used for edge means:
/// p rows above/below the center, q columns left/right of it.
struct EqualizationParams {
  int p = 7;
  int q = 7;
};

struct DehazeParams {
  int patch_radius = 7;
  double omega = 0.95;
  double t_floor = 0.1;
  double airlight_fraction = 0.001;
};

struct EdgeMeans {
  double left = 0.0, right = 0.0, top = 0.0, bottom = 0.0;
};

/// Copies the given rectangle. Rejects any rectangle that is empty or leaves
/// the frame, naming the offending bounds.
Frame crop_roi(const Frame& f, const Roi& roi);

/// Edge means of the local region. `index` is read as a row for left/right
/// and as a column for top/bottom; the region center is clamped so the
/// region always lies inside the image, which makes the means constant over
/// the first/last p rows (resp. q columns).
/// left/right = mean of the region's leftmost/rightmost column (2p+1 pixels,
/// 2q apart); top/bottom = mean of its top/bottom row (2q+1 pixels, 2p apart).
/// The region is horizontally (resp. vertically) centered on the image.
EdgeMeans edge_means(const Frame& luma, const EqualizationParams& params,
                     int index);

/// Horizontal pass: L'(i,j) = L(i,j) + a_j * (right_i - left_i) with
/// a_j = (n - 2j - 1) / (2(n-1)), clamped to [0,1]. Pre: single channel,
/// width >= 2, region fits the image.
Frame equalize_horizontal(const Frame& luma, const EqualizationParams& params);

/// Vertical pass: L'(i,j) = L(i,j) + a_i * (bottom_j - top_j) with
/// a_i = (m - 2i - 1) / (2(m-1)), clamped to [0,1]. Pre: single channel,
/// height >= 2, region fits the image.
Frame equalize_vertical(const Frame& luma, const EqualizationParams& params);

/// Runs both passes (horizontal then vertical) on the HSV value channel of an
/// RGB frame and reassembles the color image. Pre: 3 channels.
Frame illumination_equalize(const Frame& f, const EqualizationParams& params);

/// Per-pixel channel minimum, then minimum over the (2r+1)^2 patch truncated
/// at the image border. radius 0 returns the channel-min image.
Frame dark_channel(const Frame& f, int patch_radius);

/// Mean RGB of the source pixels whose dark-channel value lies in the top
/// `fraction` quantile (at least one pixel; fraction 1 averages the whole
/// frame). Ties are broken toward lower pixel index for determinism.
Rgb estimate_atmospheric_light(const Frame& f, const Frame& dark,
                               double fraction);

struct DehazeResult {
  Frame output;
  Frame transmission;  // refined map actually used, clamped to [0,1]
  Rgb airlight;
};

/// Dark-channel-prior dehazing: airlight from the top dark-channel quantile,
/// transmission t = 1 - omega * dark_channel(f / A) refined with a box filter
/// of the same radius, recovery J = (I - A) / max(t, t_floor) + A per channel.
/// A channel with airlight 0 passes through unscaled. With omega = 0 the
/// output equals the input exactly.
DehazeResult dehaze_detailed(const Frame& f, const DehazeParams& params);

/// Recovered frame only.
Frame dehaze(const Frame& f, const DehazeParams& params);

}  // namespace sdet
