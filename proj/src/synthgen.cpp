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

#include "staticdet/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace sdet::synth {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Independent, reproducible rng streams per purpose and frame.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64(seed ^ splitmix64(tag));
}

constexpr std::uint64_t kSpeckleTag = 1;
constexpr std::uint64_t kShapeTag = 2;
constexpr std::uint64_t kNoiseTagBase = 1000;

void check_unit_value(double v, const char* name) {
  require(std::isfinite(v) && v >= 0.0 && v <= 1.0, name, " must be in [0, 1], got ",
          v);
}

const char* direction_names[] = {"horizontal", "vertical", "diagonal"};

bool valid_direction(const std::string& d, bool allow_diagonal) {
  if (d == direction_names[0] || d == direction_names[1]) return true;
  return allow_diagonal && d == direction_names[2];
}

// Gray background texture, patches composited last.
std::vector<double> background_texture(const Scenario& s) {
  const BackgroundSpec& bg = s.background;
  std::vector<double> tex(static_cast<std::size_t>(s.width) * s.height, 0.0);
  switch (bg.type) {
    case BackgroundType::kUniform:
      std::fill(tex.begin(), tex.end(), bg.value);
      break;
    case BackgroundType::kGradient:
      for (int y = 0; y < s.height; ++y)
        for (int x = 0; x < s.width; ++x) {
          double along = bg.direction == "horizontal"
                             ? (s.width > 1 ? double(x) / (s.width - 1) : 0.0)
                             : (s.height > 1 ? double(y) / (s.height - 1) : 0.0);
          tex[static_cast<std::size_t>(y) * s.width + x] =
              bg.from + (bg.to - bg.from) * along;
        }
      break;
    case BackgroundType::kSpeckle: {
      std::mt19937_64 rng(derive_stream(s.seed, kSpeckleTag));
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      for (double& v : tex)
        v = std::clamp(bg.base + bg.amplitude * u(rng), 0.0, 1.0);
      break;
    }
  }
  for (const BackgroundPatch& p : bg.patches)
    for (int y = p.y; y < p.y + p.height; ++y)
      for (int x = p.x; x < p.x + p.width; ++x)
        tex[static_cast<std::size_t>(y) * s.width + x] = p.value;
  return tex;
}

bool point_in_polygon(double x, double y,
                      const std::vector<std::pair<double, double>>& poly) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    auto [xi, yi] = poly[i];
    auto [xj, yj] = poly[j];
    if ((yi > y) != (yj > y)) {
      double xint = (xj - xi) * (y - yi) / (yj - yi) + xi;
      if (x < xint) in = !in;
    }
  }
  return in;
}

// Local raster of the object shape inside its width x height bounding box.
BinaryMask shape_raster(const ObjectSpec& o, std::uint64_t seed) {
  BinaryMask raster(o.width, o.height);
  const double cx = (o.width - 1) / 2.0;
  const double cy = (o.height - 1) / 2.0;
  const double a = (o.width - 1) / 2.0;
  const double b = (o.height - 1) / 2.0;
  switch (o.shape) {
    case ObjectShape::kRectangle:
      std::fill(raster.data.begin(), raster.data.end(), std::uint8_t{1});
      break;
    case ObjectShape::kEllipse:
      for (int y = 0; y < o.height; ++y)
        for (int x = 0; x < o.width; ++x) {
          double dx = x - cx, dy = y - cy;
          double tx = a > 0.0 ? (dx / a) * (dx / a) : (dx == 0.0 ? 0.0 : 2.0);
          double ty = b > 0.0 ? (dy / b) * (dy / b) : (dy == 0.0 ? 0.0 : 2.0);
          raster.at(x, y) = tx + ty <= 1.0 ? 1 : 0;
        }
      break;
    case ObjectShape::kRockPile: {
      // Irregular seeded polygon: jittered angles, jittered radii.
      std::mt19937_64 rng(derive_stream(seed, kShapeTag));
      std::uniform_real_distribution<double> jitter(-1.0, 1.0);
      std::uniform_real_distribution<double> radius(0.55, 1.0);
      constexpr int kVerts = 14;
      std::vector<std::pair<double, double>> poly(kVerts);
      for (int k = 0; k < kVerts; ++k) {
        double theta = 2.0 * std::numbers::pi * (k + 0.35 * jitter(rng)) / kVerts;
        double r = radius(rng);
        poly[k] = {cx + std::cos(theta) * a * r, cy + std::sin(theta) * b * r};
      }
      for (int y = 0; y < o.height; ++y)
        for (int x = 0; x < o.width; ++x)
          raster.at(x, y) = point_in_polygon(x, y, poly) ? 1 : 0;
      break;
    }
  }
  return raster;
}

PixelCoord object_center(const ObjectSpec& o, long long frame) {
  if (frame >= o.stop_frame || o.stop_frame == o.entry_frame) return o.stop;
  double t = double(frame - o.entry_frame) / double(o.stop_frame - o.entry_frame);
  return {static_cast<int>(std::llround(o.start.x + (o.stop.x - o.start.x) * t)),
          static_cast<int>(std::llround(o.start.y + (o.stop.y - o.start.y) * t))};
}

struct Placement {
  int left = 0, top = 0;
};

Placement placement_at(const ObjectSpec& o, long long frame) {
  PixelCoord c = object_center(o, frame);
  return {c.x - (o.width - 1) / 2, c.y - (o.height - 1) / 2};
}

}  // namespace

const char* motion_flag_name(MotionFlag f) {
  switch (f) {
    case MotionFlag::kAbsent: return "absent";
    case MotionFlag::kMoving: return "moving";
    default: return "static";
  }
}

MotionFlag motion_flag_from_name(const std::string& name) {
  if (name == "absent") return MotionFlag::kAbsent;
  if (name == "moving") return MotionFlag::kMoving;
  if (name == "static") return MotionFlag::kStatic;
  raise("unknown motion flag \"", name, "\"");
}

void Scenario::validate() const {
  require(width >= 1 && height >= 1, "scenario dimensions must be positive, got ",
          width, "x", height);
  require(frame_count >= 1, "scenario needs at least one frame, got ",
          frame_count);
  const BackgroundSpec& bg = background;
  switch (bg.type) {
    case BackgroundType::kUniform:
      check_unit_value(bg.value, "background value");
      break;
    case BackgroundType::kGradient:
      check_unit_value(bg.from, "background gradient start");
      check_unit_value(bg.to, "background gradient end");
      require(valid_direction(bg.direction, false), "background gradient "
              "direction must be horizontal or vertical, got \"", bg.direction,
              "\"");
      break;
    case BackgroundType::kSpeckle:
      check_unit_value(bg.base, "speckle base");
      require(std::isfinite(bg.amplitude) && bg.amplitude >= 0.0,
              "speckle amplitude must be >= 0, got ", bg.amplitude);
      break;
  }
  for (const BackgroundPatch& p : bg.patches) {
    check_unit_value(p.value, "background patch value");
    require(p.width > 0 && p.height > 0 && p.x >= 0 && p.y >= 0 &&
                p.x + p.width <= width && p.y + p.height <= height,
            "background patch [", p.x, ", ", p.y, ", ", p.width, ", ", p.height,
            "] leaves the ", width, "x", height, " scene");
  }
  if (object) {
    const ObjectSpec& o = *object;
    require(o.width >= 1 && o.height >= 1, "object raster must be non-empty, got ",
            o.width, "x", o.height);
    check_unit_value(o.intensity, "object intensity");
    require(o.entry_frame >= 0, "object entry frame must be >= 0, got ",
            o.entry_frame);
    require(o.stop_frame >= o.entry_frame, "object stop frame ", o.stop_frame,
            " precedes entry frame ", o.entry_frame);
    require(o.stop_frame <= frame_count, "object stop frame ", o.stop_frame,
            " beyond the ", frame_count, "-frame sequence");
    for (long long f = o.entry_frame; f < frame_count; ++f) {
      Placement pl = placement_at(o, f);
      require(pl.left >= 0 && pl.top >= 0 && pl.left + o.width <= width &&
                  pl.top + o.height <= height,
              "object leaves the scene at frame ", f, " (raster [", pl.left,
              ", ", pl.top, ", ", o.width, ", ", o.height, "] outside ", width,
              "x", height, ")");
    }
  }
  const DegradationSpec& d = degradations;
  require(std::isfinite(d.noise_sigma) && d.noise_sigma >= 0.0,
          "noise sigma must be >= 0, got ", d.noise_sigma);
  require(d.noise_onset >= 0, "noise onset must be >= 0, got ", d.noise_onset);
  if (d.illumination) {
    require(valid_direction(d.illumination->direction, true),
            "illumination direction must be horizontal, vertical or diagonal, "
            "got \"", d.illumination->direction, "\"");
    require(std::isfinite(d.illumination->strength) &&
                d.illumination->strength >= 0.0,
            "illumination strength must be >= 0, got ",
            d.illumination->strength);
    require(d.illumination->onset >= 0, "illumination onset must be >= 0, got ",
            d.illumination->onset);
  }
  if (d.haze) {
    require(std::isfinite(d.haze->t) && d.haze->t >= 0.0 && d.haze->t <= 1.0,
            "haze transmission must be in [0, 1], got ", d.haze->t);
    check_unit_value(d.haze->airlight.r, "haze airlight r");
    check_unit_value(d.haze->airlight.g, "haze airlight g");
    check_unit_value(d.haze->airlight.b, "haze airlight b");
    require(d.haze->onset >= 0, "haze onset must be >= 0, got ", d.haze->onset);
  }
}

void generate_stream(const Scenario& s,
                     const std::function<void(FrameRecord&&)>& sink) {
  s.validate();
  std::vector<double> tex = background_texture(s);
  Frame base(s.width, s.height, 3);
  for (std::size_t px = 0; px < tex.size(); ++px) {
    base.data[px * 3] = tex[px];
    base.data[px * 3 + 1] = tex[px];
    base.data[px * 3 + 2] = tex[px];
  }
  BinaryMask raster;
  if (s.object) {
    raster = shape_raster(*s.object, s.seed);
    require(raster.popcount() > 0, "object raster came out empty; enlarge the "
            "object bounding box");
  }
  const DegradationSpec& deg = s.degradations;
  for (long long f = 0; f < s.frame_count; ++f) {
    FrameRecord rec;
    rec.index = f;
    rec.clean = base;
    rec.mask = BinaryMask(s.width, s.height);
    rec.flag = MotionFlag::kAbsent;
    if (s.object && f >= s.object->entry_frame) {
      rec.flag = f < s.object->stop_frame ? MotionFlag::kMoving
                                          : MotionFlag::kStatic;
      Placement pl = placement_at(*s.object, f);
      for (int y = 0; y < raster.height; ++y)
        for (int x = 0; x < raster.width; ++x) {
          if (!raster.at(x, y)) continue;
          rec.mask.at(pl.left + x, pl.top + y) = 1;
          for (int c = 0; c < 3; ++c)
            rec.clean.at(pl.left + x, pl.top + y, c) = s.object->intensity;
        }
    }
    Frame degraded = rec.clean;
    if (deg.illumination && f >= deg.illumination->onset &&
        deg.illumination->strength > 0.0)
      degraded = apply_illumination_gradient(degraded,
                                             deg.illumination->direction,
                                             deg.illumination->strength);
    if (deg.haze && f >= deg.haze->onset)
      degraded = apply_haze(degraded, deg.haze->t, deg.haze->airlight);
    if (deg.noise_sigma > 0.0 && f >= deg.noise_onset)
      degraded = apply_noise(degraded, deg.noise_sigma,
                             derive_stream(s.seed, kNoiseTagBase + f));
    rec.degraded = std::move(degraded);
    sink(std::move(rec));
  }
}

Sequence generate(const Scenario& s) {
  Sequence seq;
  seq.frames.reserve(s.frame_count);
  generate_stream(s, [&](FrameRecord&& rec) {
    seq.frames.push_back(std::move(rec.degraded));
    seq.truth.masks.push_back(std::move(rec.mask));
    seq.truth.flags.push_back(rec.flag);
    seq.truth.clean.push_back(std::move(rec.clean));
  });
  return seq;
}

Frame apply_haze(const Frame& f, double t, const Rgb& airlight) {
  f.validate("haze input");
  require(std::isfinite(t) && t >= 0.0 && t <= 1.0,
          "haze transmission must be in [0, 1], got ", t);
  check_unit_value(airlight.r, "airlight r");
  check_unit_value(airlight.g, "airlight g");
  check_unit_value(airlight.b, "airlight b");
  if (t == 1.0) return f;
  const double air[3] = {airlight.r, airlight.g, airlight.b};
  Frame out(f.width, f.height, f.channels);
  for (std::size_t px = 0; px < f.pixel_count(); ++px)
    for (int c = 0; c < f.channels; ++c) {
      double a = f.channels == 1 ? air[0] : air[c];
      out.data[px * f.channels + c] = std::clamp(
          f.data[px * f.channels + c] * t + a * (1.0 - t), 0.0, 1.0);
    }
  return out;
}

Frame apply_haze(const Frame& f, const Frame& t_map, const Rgb& airlight) {
  f.validate("haze input");
  require(t_map.channels == 1, "transmission map must be single-channel, got ",
          t_map.channels);
  require(t_map.width == f.width && t_map.height == f.height,
          "transmission map ", t_map.width, "x", t_map.height,
          " does not match frame ", f.width, "x", f.height);
  t_map.validate("transmission map");
  check_unit_value(airlight.r, "airlight r");
  check_unit_value(airlight.g, "airlight g");
  check_unit_value(airlight.b, "airlight b");
  const double air[3] = {airlight.r, airlight.g, airlight.b};
  Frame out(f.width, f.height, f.channels);
  for (std::size_t px = 0; px < f.pixel_count(); ++px) {
    double t = t_map.data[px];
    for (int c = 0; c < f.channels; ++c) {
      double a = f.channels == 1 ? air[0] : air[c];
      out.data[px * f.channels + c] = std::clamp(
          f.data[px * f.channels + c] * t + a * (1.0 - t), 0.0, 1.0);
    }
  }
  return out;
}

Frame apply_illumination_gradient(const Frame& f, const std::string& direction,
                                  double strength) {
  f.validate("illumination input");
  require(valid_direction(direction, true), "illumination direction must be "
          "horizontal, vertical or diagonal, got \"", direction, "\"");
  require(std::isfinite(strength) && strength >= 0.0,
          "illumination strength must be >= 0, got ", strength);
  if (strength == 0.0) return f;
  const bool along_x = direction != "vertical";
  const bool along_y = direction != "horizontal";
  auto term = [&](int x, int y) {
    double v = 0.0;
    if (along_x && f.width > 1) v += strength * (double(x) / (f.width - 1) - 0.5);
    if (along_y && f.height > 1) v += strength * (double(y) / (f.height - 1) - 0.5);
    return v;
  };
  Frame out(f.width, f.height, f.channels);
  if (f.channels == 1) {
    for (int y = 0; y < f.height; ++y)
      for (int x = 0; x < f.width; ++x)
        out.at(x, y) = std::clamp(f.at(x, y) + term(x, y), 0.0, 1.0);
    return out;
  }
  for (int y = 0; y < f.height; ++y)
    for (int x = 0; x < f.width; ++x) {
      Hsv hsv = rgb_to_hsv({f.at(x, y, 0), f.at(x, y, 1), f.at(x, y, 2)});
      hsv.v = std::clamp(hsv.v + term(x, y), 0.0, 1.0);
      Rgb c = hsv_to_rgb(hsv);
      out.at(x, y, 0) = c.r;
      out.at(x, y, 1) = c.g;
      out.at(x, y, 2) = c.b;
    }
  return out;
}

Frame apply_noise(const Frame& f, double sigma, std::uint64_t seed) {
  f.validate("noise input");
  require(std::isfinite(sigma) && sigma >= 0.0, "noise sigma must be >= 0, got ",
          sigma);
  if (sigma == 0.0) return f;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, sigma);
  Frame out(f.width, f.height, f.channels);
  for (std::size_t i = 0; i < f.data.size(); ++i)
    out.data[i] = std::clamp(f.data[i] + gauss(rng), 0.0, 1.0);
  return out;
}

}  // namespace sdet::synth
