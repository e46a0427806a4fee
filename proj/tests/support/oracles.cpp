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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace sdet::oracle {

namespace {

double window_column_mean(const Frame& f, int x, int yc, int p) {
  double s = 0.0;
  for (int y = yc - p; y <= yc + p; ++y) s += f.at(x, y);
  return s / (2 * p + 1);
}

double window_row_mean(const Frame& f, int y, int xc, int q) {
  double s = 0.0;
  for (int x = xc - q; x <= xc + q; ++x) s += f.at(x, y);
  return s / (2 * q + 1);
}

int clamp_int(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

long long cross(const PixelCoord& o, const PixelCoord& a, const PixelCoord& b) {
  return static_cast<long long>(a.x - o.x) * (b.y - o.y) -
         static_cast<long long>(a.y - o.y) * (b.x - o.x);
}

bool strictly_between(const PixelCoord& a, const PixelCoord& b,
                      const PixelCoord& c) {
  // Pre: a, b, c collinear. True iff c lies inside the open segment (a, b).
  long long dot = static_cast<long long>(c.x - a.x) * (b.x - a.x) +
                  static_cast<long long>(c.y - a.y) * (b.y - a.y);
  long long len2 = static_cast<long long>(b.x - a.x) * (b.x - a.x) +
                   static_cast<long long>(b.y - a.y) * (b.y - a.y);
  return dot > 0 && dot < len2;
}

}  // namespace

Frame naive_equalize_horizontal(const Frame& luma,
                                const EqualizationParams& params) {
  const int p = params.p, q = params.q;
  const int m = luma.height, n = luma.width;
  const int jc = (n - 1) / 2;
  Frame out(n, m, 1);
  for (int i = 0; i < m; ++i) {
    int rc = clamp_int(i, p, m - 1 - p);
    double left = window_column_mean(luma, jc - q, rc, p);
    double right = window_column_mean(luma, jc + q, rc, p);
    for (int j = 0; j < n; ++j) {
      double a = (n - 2 * j - 1) / (2.0 * (n - 1));
      double v = luma.at(j, i) + a * (right - left);
      out.at(j, i) = std::clamp(v, 0.0, 1.0);
    }
  }
  return out;
}

Frame naive_equalize_vertical(const Frame& luma,
                              const EqualizationParams& params) {
  const int p = params.p, q = params.q;
  const int m = luma.height, n = luma.width;
  const int ir = (m - 1) / 2;
  Frame out(n, m, 1);
  for (int j = 0; j < n; ++j) {
    int cc = clamp_int(j, q, n - 1 - q);
    double top = window_row_mean(luma, ir - p, cc, q);
    double bottom = window_row_mean(luma, ir + p, cc, q);
    for (int i = 0; i < m; ++i) {
      double a = (m - 2 * i - 1) / (2.0 * (m - 1));
      double v = luma.at(j, i) + a * (bottom - top);
      out.at(j, i) = std::clamp(v, 0.0, 1.0);
    }
  }
  return out;
}

Frame naive_dark_channel(const Frame& f, int patch_radius) {
  Frame out(f.width, f.height, 1);
  for (int y = 0; y < f.height; ++y) {
    for (int x = 0; x < f.width; ++x) {
      double m = std::numeric_limits<double>::infinity();
      for (int yy = y - patch_radius; yy <= y + patch_radius; ++yy) {
        for (int xx = x - patch_radius; xx <= x + patch_radius; ++xx) {
          if (xx < 0 || xx >= f.width || yy < 0 || yy >= f.height) continue;
          for (int c = 0; c < f.channels; ++c)
            m = std::min(m, f.at(xx, yy, c));
        }
      }
      out.at(x, y) = m;
    }
  }
  return out;
}

std::vector<double> naive_box_mean(const std::vector<double>& in, int w, int h,
                                   int r) {
  std::vector<double> out(in.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      int count = 0;
      for (int yy = y - r; yy <= y + r; ++yy) {
        for (int xx = x - r; xx <= x + r; ++xx) {
          if (xx < 0 || xx >= w || yy < 0 || yy >= h) continue;
          s += in[static_cast<std::size_t>(yy) * w + xx];
          ++count;
        }
      }
      out[static_cast<std::size_t>(y) * w + x] = s / count;
    }
  }
  return out;
}

Rgb naive_airlight(const Frame& f, const Frame& dark, double fraction) {
  std::vector<std::pair<double, std::size_t>> ranked(f.pixel_count());
  for (std::size_t i = 0; i < ranked.size(); ++i) ranked[i] = {dark.data[i], i};
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  auto k = static_cast<std::size_t>(std::llround(fraction * ranked.size()));
  k = std::clamp<std::size_t>(k, 1, ranked.size());
  Rgb sum;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t px = ranked[i].second;
    if (f.channels == 1) {
      sum.r += f.data[px];
      sum.g += f.data[px];
      sum.b += f.data[px];
    } else {
      sum.r += f.data[px * 3];
      sum.g += f.data[px * 3 + 1];
      sum.b += f.data[px * 3 + 2];
    }
  }
  return {sum.r / k, sum.g / k, sum.b / k};
}

BinaryMask naive_mean_threshold(const Frame& diff) {
  double sum = 0.0;
  for (double v : diff.data) sum += v;
  double mean = sum / static_cast<double>(diff.data.size());
  BinaryMask out(diff.width, diff.height);
  for (std::size_t i = 0; i < diff.data.size(); ++i)
    out.data[i] = diff.data[i] > mean ? 1 : 0;
  return out;
}

namespace {

// Mask embedded in a canvas padded by `pad` background pixels on each side.
BinaryMask padded(const BinaryMask& m, int pad) {
  BinaryMask out(m.width + 2 * pad, m.height + 2 * pad);
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x)
      out.at(x + pad, y + pad) = m.at(x, y);
  return out;
}

BinaryMask cropped(const BinaryMask& m, int pad, int w, int h) {
  BinaryMask out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) out.at(x, y) = m.at(x + pad, y + pad);
  return out;
}

}  // namespace

BinaryMask naive_erode(const BinaryMask& m, int size) {
  StructuringElement se = StructuringElement::ellipse(size);
  BinaryMask big = padded(m, size);
  BinaryMask out(big.width, big.height);
  for (int y = 0; y < big.height; ++y) {
    for (int x = 0; x < big.width; ++x) {
      bool keep = true;
      for (const PixelCoord& o : se.offsets) {
        int xx = x + o.x, yy = y + o.y;
        if (!big.in_bounds(xx, yy) || !big.at(xx, yy)) {
          keep = false;
          break;
        }
      }
      out.at(x, y) = keep ? 1 : 0;
    }
  }
  return cropped(out, size, m.width, m.height);
}

BinaryMask naive_dilate(const BinaryMask& m, int size) {
  StructuringElement se = StructuringElement::ellipse(size);
  BinaryMask big = padded(m, size);
  BinaryMask out(big.width, big.height);
  for (int y = 0; y < big.height; ++y) {
    for (int x = 0; x < big.width; ++x) {
      if (!big.at(x, y)) continue;
      for (const PixelCoord& o : se.offsets) {
        int xx = x + o.x, yy = y + o.y;
        if (out.in_bounds(xx, yy)) out.at(xx, yy) = 1;
      }
    }
  }
  return cropped(out, size, m.width, m.height);
}

std::vector<Component> naive_connected_components(const BinaryMask& m) {
  std::vector<int> label(m.pixel_count(), -1);
  int next = 0;
  std::vector<PixelCoord> stack;
  for (int sy = 0; sy < m.height; ++sy) {
    for (int sx = 0; sx < m.width; ++sx) {
      if (!m.at(sx, sy) || label[m.index(sx, sy)] >= 0) continue;
      int id = next++;
      stack.push_back({sx, sy});
      label[m.index(sx, sy)] = id;
      while (!stack.empty()) {
        PixelCoord p = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            int xx = p.x + dx, yy = p.y + dy;
            if (!m.in_bounds(xx, yy) || !m.at(xx, yy)) continue;
            if (label[m.index(xx, yy)] >= 0) continue;
            label[m.index(xx, yy)] = id;
            stack.push_back({xx, yy});
          }
        }
      }
    }
  }
  std::vector<Component> comps(next);
  for (int id = 0; id < next; ++id) comps[id].label = id;
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      int id = label[m.index(x, y)];
      if (id < 0) continue;
      comps[id].pixels.push_back({x, y});
    }
  }
  for (Component& c : comps) {
    c.area = static_cast<long long>(c.pixels.size());
    int min_x = c.pixels[0].x, max_x = c.pixels[0].x;
    int min_y = c.pixels[0].y, max_y = c.pixels[0].y;
    long long sum_x = 0, sum_y = 0;
    for (const PixelCoord& p : c.pixels) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
      sum_x += p.x;
      sum_y += p.y;
    }
    c.bbox = {min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
    c.centroid_x = static_cast<double>(sum_x) / c.area;
    c.centroid_y = static_cast<double>(sum_y) / c.area;
  }
  return comps;
}

std::vector<PixelCoord> naive_convex_hull(const std::vector<PixelCoord>& pts) {
  std::vector<PixelCoord> points = pts;
  std::sort(points.begin(), points.end(),
            [](const PixelCoord& a, const PixelCoord& b) {
              return a.x != b.x ? a.x < b.x : a.y < b.y;
            });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::size_t n = points.size();
  if (n <= 2) return points;

  // All collinear? Then the hull degenerates to the two extreme points.
  bool all_collinear = true;
  for (std::size_t i = 2; i < n && all_collinear; ++i)
    if (cross(points[0], points[1], points[i]) != 0) all_collinear = false;
  if (all_collinear) return {points.front(), points.back()};

  // Directed edge a->b is a hull edge iff every other point is strictly to
  // its left, or collinear and strictly inside the segment.
  auto is_hull_edge = [&](std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < n; ++c) {
      if (c == a || c == b) continue;
      long long cr = cross(points[a], points[b], points[c]);
      if (cr > 0) continue;
      if (cr == 0 && strictly_between(points[a], points[b], points[c]))
        continue;
      return false;
    }
    return true;
  };

  std::vector<PixelCoord> hull;
  std::size_t start = 0;  // points are sorted, so 0 is lexicographically least
  std::size_t cur = start;
  do {
    hull.push_back(points[cur]);
    std::size_t nxt = n;
    for (std::size_t b = 0; b < n; ++b) {
      if (b == cur) continue;
      if (is_hull_edge(cur, b)) {
        nxt = b;
        break;
      }
    }
    require(nxt < n, "hull walk found a vertex without an outgoing edge");
    cur = nxt;
    require(hull.size() <= n, "hull walk failed to close");
  } while (cur != start);
  return hull;
}

NaiveMog::NaiveMog(const Frame& first_luma, const MogParams& params)
    : params_(params), width_(first_luma.width), height_(first_luma.height) {
  state_.resize(first_luma.pixel_count());
  for (std::size_t px = 0; px < state_.size(); ++px) {
    state_[px].assign(static_cast<std::size_t>(params.k),
                      GaussianComponent{0.0, 0.0, params.initial_variance});
    state_[px][0] = {1.0, first_luma.data[px], params.initial_variance};
  }
}

BinaryMask NaiveMog::update_and_classify(const Frame& luma) {
  BinaryMask mask(width_, height_);
  const double alpha = params_.learning_rate;
  for (std::size_t px = 0; px < state_.size(); ++px) {
    std::vector<GaussianComponent>& comps = state_[px];
    const double x = luma.data[px];

    int matched = -1;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (comps[i].weight <= 0.0) continue;
      if (std::fabs(x - comps[i].mean) <=
          params_.match_threshold * std::sqrt(comps[i].variance)) {
        matched = static_cast<int>(i);
        break;
      }
    }

    int b = 0;
    double cum = 0.0;
    while (b < params_.k && cum <= params_.background_portion) {
      cum += comps[b].weight;
      ++b;
    }
    mask.data[px] = (matched < 0 || matched >= b) ? 1 : 0;

    if (matched >= 0) {
      for (GaussianComponent& c : comps) c.weight *= 1.0 - alpha;
      GaussianComponent& c = comps[matched];
      c.weight += alpha;
      double rho = alpha / c.weight;
      c.mean += rho * (x - c.mean);
      double d = x - c.mean;
      c.variance = (1.0 - rho) * c.variance + rho * d * d;
      if (c.variance < params_.variance_floor)
        c.variance = params_.variance_floor;
    } else {
      comps.back() = {alpha, x, params_.initial_variance};
      double sum = 0.0;
      for (const GaussianComponent& c : comps) sum += c.weight;
      for (GaussianComponent& c : comps) c.weight /= sum;
    }

    std::stable_sort(comps.begin(), comps.end(),
                     [](const GaussianComponent& a, const GaussianComponent& b) {
                       return a.weight / std::sqrt(a.variance) >
                              b.weight / std::sqrt(b.variance);
                     });
  }
  return mask;
}

}  // namespace sdet::oracle
