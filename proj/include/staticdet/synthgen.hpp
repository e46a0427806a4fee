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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "staticdet/color.hpp"
#include "staticdet/frame.hpp"
#include "staticdet/fusion.hpp"

namespace sdet::synth {

enum class BackgroundType { kUniform, kGradient, kSpeckle };

/// Constant-value rectangle composited over the background texture
/// (calibration-target style bright/dark regions).
struct BackgroundPatch {
  int x = 0, y = 0, width = 0, height = 0;
  double value = 0.0;
};

struct BackgroundSpec {
  BackgroundType type = BackgroundType::kUniform;
  double value = 0.5;                      // uniform
  double from = 0.0, to = 1.0;             // gradient endpoints
  std::string direction = "horizontal";    // gradient axis
  double base = 0.5, amplitude = 0.1;      // speckle: uniform in base +- amplitude
  std::vector<BackgroundPatch> patches;
};

enum class ObjectShape { kRectangle, kEllipse, kRockPile };

/// One object dropped into the scene. Its center moves linearly from `start`
/// to `stop` over frames [entry_frame, stop_frame), then rests at `stop`.
/// stop_frame may equal the frame count for an object that never rests.
struct ObjectSpec {
  ObjectShape shape = ObjectShape::kRectangle;
  int width = 1, height = 1;  // raster bounding box
  double intensity = 0.5;
  int entry_frame = 0;
  int stop_frame = 0;
  PixelCoord start, stop;  // center positions
};

struct IlluminationSpec {
  std::string direction = "horizontal";  // horizontal | vertical | diagonal
  double strength = 0.0;
  int onset = 0;
};

struct HazeSpec {
  double t = 1.0;
  Rgb airlight{0.9, 0.9, 0.9};
  int onset = 0;
};

struct DegradationSpec {
  double noise_sigma = 0.0;
  int noise_onset = 0;
  std::optional<IlluminationSpec> illumination;
  std::optional<HazeSpec> haze;
};

struct Scenario {
  int width = 0, height = 0;
  int frame_count = 0;
  std::uint64_t seed = 0;
  BackgroundSpec background;
  std::optional<ObjectSpec> object;
  DegradationSpec degradations;

  void validate() const;
};

enum class MotionFlag { kAbsent, kMoving, kStatic };

const char* motion_flag_name(MotionFlag f);
MotionFlag motion_flag_from_name(const std::string& name);

/// Everything known about one generated frame. `clean` is the scene before
/// any degradation; `mask` covers exactly the object raster.
struct FrameRecord {
  long long index = 0;
  Frame degraded;
  Frame clean;
  BinaryMask mask;
  MotionFlag flag = MotionFlag::kAbsent;
};

struct GroundTruth {
  std::vector<BinaryMask> masks;
  std::vector<MotionFlag> flags;
  std::vector<Frame> clean;
};

struct Sequence {
  std::vector<Frame> frames;
  GroundTruth truth;
};

/// Streams frames one at a time; all randomness derives from the scenario
/// seed (background and object shape once, noise from seed + frame index),
/// so repeated runs are identical.
void generate_stream(const Scenario& s,
                     const std::function<void(FrameRecord&&)>& sink);

/// Collects the whole sequence in memory; meant for small scenarios (frames
/// are stored as doubles, roughly 2 MB per 300x300 RGB frame).
Sequence generate(const Scenario& s);

/// Composites haze: I = J * t + A * (1 - t) per channel. t = 1 returns the
/// input exactly, t = 0 the pure airlight. Pre: t in [0, 1].
Frame apply_haze(const Frame& f, double t, const Rgb& airlight);

/// Per-pixel transmission map variant. Pre: single-channel map of matching
/// size with values in [0, 1].
Frame apply_haze(const Frame& f, const Frame& t_map, const Rgb& airlight);

/// Additive linear ramp on the HSV value channel (directly on the values of
/// single-channel frames): the ramp spans [-strength/2, +strength/2] across
/// the direction axis; "diagonal" adds the horizontal and vertical terms with
/// a single final clamp. strength 0 returns the input exactly.
Frame apply_illumination_gradient(const Frame& f, const std::string& direction,
                                  double strength);

/// Additive Gaussian noise with the given sigma on every value, clamped.
/// sigma 0 returns the input exactly.
Frame apply_noise(const Frame& f, double sigma, std::uint64_t seed);

/// Generates and writes a scenario to disk: frames/frame_%06d.ppm,
/// truth/mask_%06d.pgm, clean/clean_%06d.ppm and manifest.json (per-frame
/// motion flags plus the scenario echo). Returns the number of frames.
long long write_sequence(const Scenario& s, const std::filesystem::path& dir);

}  // namespace sdet::synth
