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

#include "staticdet/fusion.hpp"

#include <algorithm>
#include <deque>

namespace sdet {

namespace {

void check_same_shape(const BinaryMask& a, const BinaryMask& b,
                      const char* what) {
  require(a.same_shape(b), what, ": mask dimensions differ, ", a.width, "x",
          a.height, " vs ", b.width, "x", b.height);
}

long long cross(const PixelCoord& o, const PixelCoord& a, const PixelCoord& b) {
  return static_cast<long long>(a.x - o.x) * (b.y - o.y) -
         static_cast<long long>(a.y - o.y) * (b.x - o.x);
}

}  // namespace

StructuringElement StructuringElement::ellipse(int size) {
  require(size >= 1 && size % 2 == 1, "structuring element size must be odd "
          "and positive, got ", size);
  StructuringElement se;
  se.size = size;
  int a = size / 2;
  for (int dy = -a; dy <= a; ++dy)
    for (int dx = -a; dx <= a; ++dx)
      if (dx * dx + dy * dy <= a * a) se.offsets.push_back({dx, dy});
  return se;
}

BinaryMask subtract_masks(const BinaryMask& a, const BinaryMask& b) {
  check_same_shape(a, b, "subtract_masks");
  BinaryMask out(a.width, a.height);
  for (std::size_t i = 0; i < out.data.size(); ++i)
    out.data[i] = (a.data[i] && !b.data[i]) ? 1 : 0;
  return out;
}

BinaryMask erode(const BinaryMask& m, const StructuringElement& se) {
  m.validate("erode input");
  BinaryMask out(m.width, m.height);
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      bool keep = true;
      for (const PixelCoord& o : se.offsets) {
        int xx = x + o.x, yy = y + o.y;
        if (!m.in_bounds(xx, yy) || !m.at(xx, yy)) {
          keep = false;
          break;
        }
      }
      out.at(x, y) = keep ? 1 : 0;
    }
  }
  return out;
}

BinaryMask dilate(const BinaryMask& m, const StructuringElement& se) {
  m.validate("dilate input");
  BinaryMask out(m.width, m.height);
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      bool hit = false;
      for (const PixelCoord& o : se.offsets) {
        int xx = x - o.x, yy = y - o.y;
        if (m.in_bounds(xx, yy) && m.at(xx, yy)) {
          hit = true;
          break;
        }
      }
      out.at(x, y) = hit ? 1 : 0;
    }
  }
  return out;
}

std::vector<Component> connected_components(const BinaryMask& m) {
  m.validate("connected_components input");
  std::vector<int> label(m.pixel_count(), -1);
  std::vector<Component> comps;
  static constexpr int kDx[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
  static constexpr int kDy[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
  std::deque<PixelCoord> queue;
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      if (!m.at(x, y) || label[m.index(x, y)] >= 0) continue;
      Component comp;
      comp.label = static_cast<int>(comps.size());
      int min_x = x, max_x = x, min_y = y, max_y = y;
      long long sum_x = 0, sum_y = 0;
      label[m.index(x, y)] = comp.label;
      queue.push_back({x, y});
      while (!queue.empty()) {
        PixelCoord p = queue.front();
        queue.pop_front();
        comp.pixels.push_back(p);
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
        sum_x += p.x;
        sum_y += p.y;
        for (int d = 0; d < 8; ++d) {
          int xx = p.x + kDx[d], yy = p.y + kDy[d];
          if (!m.in_bounds(xx, yy) || !m.at(xx, yy)) continue;
          if (label[m.index(xx, yy)] >= 0) continue;
          label[m.index(xx, yy)] = comp.label;
          queue.push_back({xx, yy});
        }
      }
      comp.area = static_cast<long long>(comp.pixels.size());
      comp.bbox = {min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
      comp.centroid_x = static_cast<double>(sum_x) / comp.area;
      comp.centroid_y = static_cast<double>(sum_y) / comp.area;
      // BFS discovery order is not raster order; keep the pixel list raster
      // sorted so downstream consumers get a canonical ordering.
      std::sort(comp.pixels.begin(), comp.pixels.end(),
                [](const PixelCoord& a, const PixelCoord& b) {
                  return a.y != b.y ? a.y < b.y : a.x < b.x;
                });
      comps.push_back(std::move(comp));
    }
  }
  return comps;
}

std::optional<Component> largest_component(const std::vector<Component>& comps,
                                           long long min_area) {
  require(min_area >= 0, "min_area must be >= 0, got ", min_area);
  const Component* best = nullptr;
  for (const Component& c : comps) {
    if (c.area < min_area) continue;
    if (!best || c.area > best->area) best = &c;  // ties keep the smaller label
  }
  if (!best) return std::nullopt;
  return *best;
}

std::vector<PixelCoord> convex_hull(std::vector<PixelCoord> points) {
  require(!points.empty(), "convex hull of an empty point set is undefined");
  std::sort(points.begin(), points.end(),
            [](const PixelCoord& a, const PixelCoord& b) {
              return a.x != b.x ? a.x < b.x : a.y < b.y;
            });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::size_t n = points.size();
  if (n <= 2) return points;
  // Monotone chain; strict turns only, so collinear points drop out.
  std::vector<PixelCoord> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower hull
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {  // upper hull
    while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);  // last point repeats the first
  if (hull.size() == 2 && hull[0] == hull[1]) hull.pop_back();
  return hull;
}

void PostParams::validate() const {
  require(erode_size >= 1 && erode_size % 2 == 1, "erode size must be odd and "
          "positive, got ", erode_size);
  require(dilate_size >= 1 && dilate_size % 2 == 1, "dilate size must be odd "
          "and positive, got ", dilate_size);
  require(min_area >= 0, "min_area must be >= 0, got ", min_area);
}

std::optional<Detection> detect(const BinaryMask& difference_fg,
                                const BinaryMask& motion_fg,
                                const PostParams& params,
                                long long frame_index) {
  params.validate();
  check_same_shape(difference_fg, motion_fg, "detect");
  BinaryMask fused = subtract_masks(difference_fg, motion_fg);
  fused = erode(fused, StructuringElement::ellipse(params.erode_size));
  fused = dilate(fused, StructuringElement::ellipse(params.dilate_size));
  std::vector<Component> comps = connected_components(fused);
  std::optional<Component> best = largest_component(comps, params.min_area);
  if (!best) return std::nullopt;
  Detection d;
  d.hull = convex_hull(best->pixels);
  d.component = std::move(*best);
  d.frame_index = frame_index;
  return d;
}

}  // namespace sdet
