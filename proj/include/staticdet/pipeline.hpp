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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "staticdet/fusion.hpp"
#include "staticdet/mog.hpp"
#include "staticdet/preprocess.hpp"

namespace sdet {

struct InputConfig {
  std::string dir;
  std::string pattern = "frame_%06d.ppm";  // single printf-style %d / %0Nd slot
  bool allow_gaps = false;  // skip missing indices (warn) instead of aborting
};

enum class ThresholdMode {
  kPerFrame,  // T = mean of each frame's difference image
  kFrozen,    // T latched at the first frame after the reference, then reused
};

struct OutputConfig {
  std::string dir = "out";
  bool emit_masks = false;
  bool emit_overlays = false;
  bool emit_report = true;
};

struct PipelineConfig {
  InputConfig input;
  std::optional<Roi> roi;  // default: full frame
  bool equalization_enabled = true;
  EqualizationParams equalization;
  bool dehaze_enabled = true;
  DehazeParams dehaze;
  MogParams mog;
  ThresholdMode threshold_mode = ThresholdMode::kPerFrame;
  int erode_size = 3;
  int dilate_size = 5;
  // Smallest reportable component; defaults to 0.5% of the processed area.
  std::optional<long long> min_area;
  OutputConfig output;

  PostParams resolve_post(int width, int height) const;
};

struct StageTimings {
  double preprocess_ms = 0.0;
  double framediff_ms = 0.0;
  double mog_ms = 0.0;
  double post_ms = 0.0;
  double total_ms = 0.0;

  bool operator==(const StageTimings&) const = default;
};

struct DetectionSummary {
  long long area = 0;
  Rect bbox;
  double centroid_x = 0.0;
  double centroid_y = 0.0;
  std::vector<PixelCoord> hull;

  bool operator==(const DetectionSummary&) const = default;
};

struct FrameReport {
  long long index = 0;
  double threshold = 0.0;
  long long popcount_difference = 0;
  long long popcount_motion = 0;
  long long popcount_fused = 0;
  std::optional<DetectionSummary> detection;
  StageTimings timings;

  bool operator==(const FrameReport&) const = default;
};

struct SequenceEntry {
  long long index = 0;
  std::filesystem::path path;
};

/// Directory scan for the pattern's numbered files, sorted by index.
/// Gaps abort (naming the first missing index) unless allow_gaps, which
/// warns on stderr and skips. No matches at all is an error.
std::vector<SequenceEntry> scan_sequence(const std::filesystem::path& dir,
                                         const std::string& pattern,
                                         bool allow_gaps);

/// Loads every frame of the scan in index order. Meant for short sequences;
/// the pipeline itself streams frame by frame.
std::vector<Frame> load_sequence(const std::filesystem::path& dir,
                                 const std::string& pattern,
                                 bool allow_gaps = false);

/// Runs the full detector over the configured input sequence: frame 0 seeds
/// the reference frame and the background model, every frame flows
/// crop -> equalize -> dehaze -> (difference || mixture model) -> fusion.
/// Side outputs (masks, overlays, report.json) land in output.dir per config.
std::vector<FrameReport> run_pipeline(const PipelineConfig& config);

/// Intersection over union of two masks; two empty masks count as 1.
double compute_iou(const BinaryMask& a, const BinaryMask& b);

/// Copy of `f` (promoted to RGB if single-channel) with the detection's hull
/// polyline drawn in pure green; only hull-edge pixels are touched. Without a
/// detection the copy comes back unmarked.
Frame render_overlay(const Frame& f, const std::optional<Detection>& detection);

struct EvalEntry {
  long long index = 0;
  double iou = 0.0;
};

struct EvalSummary {
  std::vector<EvalEntry> per_frame;
  double mean_iou = 0.0;
  double min_iou = 0.0;
};

/// Pairs *.pgm masks of both directories by the trailing number in their
/// stems and scores predicted against truth. Index sets must match exactly.
EvalSummary evaluate_masks(const std::filesystem::path& pred_dir,
                           const std::filesystem::path& truth_dir);

}  // namespace sdet
