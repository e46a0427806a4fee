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

#include <optional>
#include <vector>

#include "staticdet/frame.hpp"

namespace sdet {

struct PixelCoord {
  int x = 0;
  int y = 0;
  bool operator==(const PixelCoord&) const = default;
};

struct Rect {
  int x = 0, y = 0, width = 0, height = 0;
  bool operator==(const Rect&) const = default;
};

/// Discrete filled ellipse (circle for the square case): with a = size/2,
/// offset (dx,dy) belongs iff dx^2 + dy^2 <= a^2. Size 3 is the 5-pixel
/// cross, size 5 the 13-pixel disk, size 1 the identity. The center is always
/// set and the shape is 180-degree symmetric.
struct StructuringElement {
  int size = 1;
  std::vector<PixelCoord> offsets;  // (dx, dy) pairs, raster order

  static StructuringElement ellipse(int size);
};

/// a AND NOT b, elementwise. Dimensions must match.
BinaryMask subtract_masks(const BinaryMask& a, const BinaryMask& b);

/// Pixel survives iff every offset lands in-bounds on a foreground pixel
/// (out-of-bounds counts as background, so borders erode away).
BinaryMask erode(const BinaryMask& m, const StructuringElement& se);

/// Pixel fires iff any reflected offset lands in-bounds on a foreground pixel.
BinaryMask dilate(const BinaryMask& m, const StructuringElement& se);

struct Component {
  int label = 0;  // raster order of the component's first pixel, from 0
  long long area = 0;
  Rect bbox;
  double centroid_x = 0.0;
  double centroid_y = 0.0;
  std::vector<PixelCoord> pixels;  // raster order
};

/// 8-connected components, labeled in raster order of first appearance.
std::vector<Component> connected_components(const BinaryMask& m);

/// Largest component with area >= min_area; ties broken toward the smaller
/// label. Empty result when nothing qualifies.
std::optional<Component> largest_component(const std::vector<Component>& comps,
                                           long long min_area);

/// Convex hull of integer points, counter-clockwise in standard orientation
/// (y up), starting from the lexicographically smallest vertex. Collinear
/// boundary points are excluded; 1 or 2 distinct input points come back as a
/// degenerate 1- or 2-vertex hull. Pre: points non-empty.
std::vector<PixelCoord> convex_hull(std::vector<PixelCoord> points);

struct Detection {
  Component component;
  std::vector<PixelCoord> hull;
  long long frame_index = 0;
};

struct PostParams {
  int erode_size = 3;
  int dilate_size = 5;
  long long min_area = 450;

  void validate() const;
};

/// Dual-foreground fusion: keeps difference-mask pixels the motion mask does
/// not claim, opens the result (erode then dilate), and reports the largest
/// surviving component with its convex hull. Empty when nothing reaches
/// min_area.
std::optional<Detection> detect(const BinaryMask& difference_fg,
                                const BinaryMask& motion_fg,
                                const PostParams& params,
                                long long frame_index = 0);

}  // namespace sdet
