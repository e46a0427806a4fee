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

#include "staticdet/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <utility>

#include "staticdet/color.hpp"
#include "staticdet/config.hpp"
#include "staticdet/error.hpp"
#include "staticdet/framediff.hpp"
#include "staticdet/image_io.hpp"

namespace sdet {

namespace fs = std::filesystem;

namespace {

struct PatternParts {
  std::string prefix;
  std::string suffix;
  int pad = 0;  // zero-pad width of the index slot, 0 for plain %d
};

PatternParts split_pattern(const std::string& pattern) {
  std::size_t pos = pattern.find('%');
  require(pos != std::string::npos, "pattern \"", pattern,
          "\" needs one printf-style index slot like %06d");
  std::size_t i = pos + 1;
  while (i < pattern.size() &&
         std::isdigit(static_cast<unsigned char>(pattern[i])))
    ++i;
  require(i < pattern.size() && pattern[i] == 'd', "pattern \"", pattern,
          "\": the index slot must be %d or zero-padded %0Nd");
  require(pattern.find('%', i) == std::string::npos, "pattern \"", pattern,
          "\" must hold exactly one index slot");
  PatternParts parts;
  parts.prefix = pattern.substr(0, pos);
  parts.suffix = pattern.substr(i + 1);
  std::string spec = pattern.substr(pos + 1, i - pos - 1);
  if (!spec.empty()) {
    require(spec[0] == '0', "pattern \"", pattern,
            "\": only zero padding is supported in the index slot");
    parts.pad = std::stoi(spec);
  }
  return parts;
}

std::string format_name(const PatternParts& parts, long long index) {
  std::string num = std::to_string(index);
  if (static_cast<int>(num.size()) < parts.pad)
    num.insert(0, parts.pad - num.size(), '0');
  return parts.prefix + num + parts.suffix;
}

std::string padded_index(long long index) {
  std::string num = std::to_string(index);
  if (num.size() < 6) num.insert(0, 6 - num.size(), '0');
  return num;
}

void plot_line(PixelCoord a, PixelCoord b,
               const std::function<void(int, int)>& plot) {
  int dx = std::abs(b.x - a.x), sx = a.x < b.x ? 1 : -1;
  int dy = -std::abs(b.y - a.y), sy = a.y < b.y ? 1 : -1;
  int err = dx + dy;
  int x = a.x, y = a.y;
  for (;;) {
    plot(x, y);
    if (x == b.x && y == b.y) break;
    int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y += sy;
    }
  }
}

// Trailing digit run of the stem, or nullopt when there is none (or it is
// too long to be a sane index).
std::optional<long long> trailing_index(const std::string& stem) {
  std::size_t end = stem.size();
  std::size_t begin = end;
  while (begin > 0 && std::isdigit(static_cast<unsigned char>(stem[begin - 1])))
    --begin;
  if (begin == end || end - begin > 18) return std::nullopt;
  return std::stoll(stem.substr(begin));
}

std::map<long long, fs::path> collect_masks(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    raise_io("mask directory ", dir.string(), " does not exist");
  std::map<long long, fs::path> found;
  for (const fs::directory_entry& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().extension() != ".pgm") continue;
    std::optional<long long> idx = trailing_index(e.path().stem().string());
    if (!idx) continue;
    auto [it, inserted] = found.emplace(*idx, e.path());
    if (!inserted)
      raise_io("masks ", it->second.filename().string(), " and ",
               e.path().filename().string(), " in ", dir.string(),
               " both map to index ", *idx);
  }
  if (found.empty())
    raise_io("no numbered .pgm masks in ", dir.string());
  return found;
}

}  // namespace

PostParams PipelineConfig::resolve_post(int width, int height) const {
  require(width >= 1 && height >= 1,
          "processed area must be non-empty, got ", width, "x", height);
  PostParams post;
  post.erode_size = erode_size;
  post.dilate_size = dilate_size;
  post.min_area = min_area
                      ? *min_area
                      : std::llround(0.005 * static_cast<double>(width) * height);
  post.validate();
  return post;
}

std::vector<SequenceEntry> scan_sequence(const fs::path& dir,
                                         const std::string& pattern,
                                         bool allow_gaps) {
  PatternParts parts = split_pattern(pattern);
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    raise_io("input directory ", dir.string(), " does not exist");
  std::map<long long, fs::path> found;
  for (const fs::directory_entry& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::string name = e.path().filename().string();
    if (name.size() < parts.prefix.size() + parts.suffix.size() + 1) continue;
    if (!name.starts_with(parts.prefix) || !name.ends_with(parts.suffix))
      continue;
    std::string mid = name.substr(
        parts.prefix.size(), name.size() - parts.prefix.size() - parts.suffix.size());
    if (mid.empty() || mid.size() > 18 ||
        !std::all_of(mid.begin(), mid.end(), [](unsigned char c) {
          return std::isdigit(c);
        }))
      continue;
    long long idx = std::stoll(mid);
    auto [it, inserted] = found.emplace(idx, e.path());
    if (!inserted)
      raise_io("frames ", it->second.filename().string(), " and ", name,
               " in ", dir.string(), " both map to index ", idx);
  }
  if (found.empty())
    raise_io("no frames matching \"", pattern, "\" in ", dir.string());
  std::vector<SequenceEntry> out;
  out.reserve(found.size());
  long long expected = found.begin()->first;
  for (const auto& [idx, path] : found) {
    if (idx != expected) {
      if (!allow_gaps)
        raise_io("sequence gap in ", dir.string(), ": missing ",
                 format_name(parts, expected));
      std::cerr << "staticdet: warning: missing frames " << expected << ".."
                << idx - 1 << " in " << dir.string() << "; skipping\n";
    }
    out.push_back({idx, path});
    expected = idx + 1;
  }
  return out;
}

std::vector<Frame> load_sequence(const fs::path& dir,
                                 const std::string& pattern, bool allow_gaps) {
  std::vector<SequenceEntry> entries = scan_sequence(dir, pattern, allow_gaps);
  std::vector<Frame> frames;
  frames.reserve(entries.size());
  for (const SequenceEntry& e : entries) frames.push_back(load_image(e.path));
  return frames;
}

std::vector<FrameReport> run_pipeline(const PipelineConfig& config) {
  std::vector<SequenceEntry> entries =
      scan_sequence(config.input.dir, config.input.pattern,
                    config.input.allow_gaps);
  const OutputConfig& oc = config.output;
  fs::path outdir = oc.dir;
  if (oc.emit_masks || oc.emit_overlays || oc.emit_report) {
    std::error_code ec;
    fs::create_directories(outdir, ec);
    if (ec)
      raise_io("cannot create output directory ", outdir.string(), ": ",
               ec.message());
  }

  using Clock = std::chrono::steady_clock;
  auto ms = [](Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
  };

  ReferenceFrame reference;
  std::optional<BackgroundModel> model;
  std::optional<PostParams> post;
  std::optional<double> frozen_threshold;
  std::vector<FrameReport> reports;
  reports.reserve(entries.size());
  int width = 0, height = 0;
  bool first = true;

  for (const SequenceEntry& entry : entries) {
    Frame raw = load_image(entry.path);
    auto t0 = Clock::now();
    Frame processed = config.roi ? crop_roi(raw, *config.roi) : std::move(raw);
    if (first) {
      width = processed.width;
      height = processed.height;
      post = config.resolve_post(width, height);
    } else if (processed.width != width || processed.height != height) {
      raise_io("frame ", entry.path.string(), " is ", processed.width, "x",
               processed.height, " after cropping, expected ", width, "x",
               height);
    }
    if (config.equalization_enabled) {
      processed = processed.channels == 3
                      ? illumination_equalize(processed, config.equalization)
                      : equalize_vertical(
                            equalize_horizontal(processed, config.equalization),
                            config.equalization);
    }
    if (config.dehaze_enabled) processed = dehaze(processed, config.dehaze);
    Frame luma = luma_frame(processed);
    auto t1 = Clock::now();

    if (first) reference.set(luma);
    Frame diff = frame_difference(luma, reference);
    double threshold;
    if (config.threshold_mode == ThresholdMode::kFrozen && frozen_threshold) {
      threshold = *frozen_threshold;
    } else {
      threshold = global_mean(diff);
      // The frozen mode latches the first post-reference threshold; the seed
      // frame's all-zero difference would freeze T = 0.
      if (config.threshold_mode == ThresholdMode::kFrozen && !first)
        frozen_threshold = threshold;
    }
    BinaryMask difference_fg = threshold_mask(diff, threshold);
    auto t2 = Clock::now();

    if (first) model.emplace(luma, config.mog);
    BinaryMask motion_fg = model->update_and_classify(luma);
    auto t3 = Clock::now();

    BinaryMask fused = subtract_masks(difference_fg, motion_fg);
    std::optional<Detection> detection =
        detect(difference_fg, motion_fg, *post, entry.index);
    auto t4 = Clock::now();

    FrameReport rep;
    rep.index = entry.index;
    rep.threshold = threshold;
    rep.popcount_difference = difference_fg.popcount();
    rep.popcount_motion = motion_fg.popcount();
    rep.popcount_fused = fused.popcount();
    if (detection) {
      DetectionSummary& d = rep.detection.emplace();
      d.area = detection->component.area;
      d.bbox = detection->component.bbox;
      d.centroid_x = detection->component.centroid_x;
      d.centroid_y = detection->component.centroid_y;
      d.hull = detection->hull;
    }
    rep.timings.preprocess_ms = ms(t0, t1);
    rep.timings.framediff_ms = ms(t1, t2);
    rep.timings.mog_ms = ms(t2, t3);
    rep.timings.post_ms = ms(t3, t4);
    rep.timings.total_ms = ms(t0, t4);

    if (oc.emit_masks) {
      std::string idx = padded_index(entry.index);
      write_mask(outdir / ("diff_fg_" + idx + ".pgm"), difference_fg);
      write_mask(outdir / ("motion_fg_" + idx + ".pgm"), motion_fg);
      write_mask(outdir / ("fused_fg_" + idx + ".pgm"), fused);
      BinaryMask det_mask(width, height);
      if (detection)
        for (const PixelCoord& p : detection->component.pixels)
          det_mask.at(p.x, p.y) = 1;
      write_mask(outdir / ("detection_" + idx + ".pgm"), det_mask);
    }
    if (oc.emit_overlays)
      write_image(outdir / ("overlay_" + padded_index(entry.index) + ".ppm"),
                  render_overlay(processed, detection));

    reports.push_back(std::move(rep));
    first = false;
  }

  if (oc.emit_report)
    write_report(outdir / "report.json", pipeline_config_to_json(config),
                 reports);
  return reports;
}

double compute_iou(const BinaryMask& a, const BinaryMask& b) {
  require(a.same_shape(b), "mask shapes differ: ", a.width, "x", a.height,
          " vs ", b.width, "x", b.height);
  long long inter = 0, uni = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    bool av = a.data[i] != 0, bv = b.data[i] != 0;
    inter += av && bv;
    uni += av || bv;
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

Frame render_overlay(const Frame& f, const std::optional<Detection>& detection) {
  f.validate("overlay base");
  Frame out(f.width, f.height, 3);
  if (f.channels == 3) {
    out.data = f.data;
  } else {
    for (std::size_t px = 0; px < f.pixel_count(); ++px) {
      out.data[px * 3] = f.data[px];
      out.data[px * 3 + 1] = f.data[px];
      out.data[px * 3 + 2] = f.data[px];
    }
  }
  if (!detection || detection->hull.empty()) return out;
  auto plot = [&](int x, int y) {
    if (x < 0 || x >= out.width || y < 0 || y >= out.height) return;
    out.at(x, y, 0) = 0.0;
    out.at(x, y, 1) = 1.0;
    out.at(x, y, 2) = 0.0;
  };
  const std::vector<PixelCoord>& hull = detection->hull;
  if (hull.size() == 1) {
    plot(hull[0].x, hull[0].y);
    return out;
  }
  for (std::size_t i = 0; i < hull.size(); ++i)
    plot_line(hull[i], hull[(i + 1) % hull.size()], plot);
  return out;
}

EvalSummary evaluate_masks(const fs::path& pred_dir,
                           const fs::path& truth_dir) {
  std::map<long long, fs::path> pred = collect_masks(pred_dir);
  std::map<long long, fs::path> truth = collect_masks(truth_dir);
  for (const auto& [idx, path] : pred)
    require(truth.count(idx) != 0, "prediction index ", idx,
            " has no ground-truth mask in ", truth_dir.string());
  for (const auto& [idx, path] : truth)
    require(pred.count(idx) != 0, "ground-truth index ", idx,
            " has no predicted mask in ", pred_dir.string());
  EvalSummary summary;
  summary.per_frame.reserve(pred.size());
  double sum = 0.0;
  double lowest = 1.0;
  for (const auto& [idx, path] : pred) {
    BinaryMask p = load_mask(path);
    BinaryMask t = load_mask(truth.at(idx));
    double iou = compute_iou(p, t);
    summary.per_frame.push_back({idx, iou});
    sum += iou;
    lowest = std::min(lowest, iou);
  }
  summary.mean_iou = sum / static_cast<double>(summary.per_frame.size());
  summary.min_iou = lowest;
  return summary;
}

}  // namespace sdet
