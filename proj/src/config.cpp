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

#include "staticdet/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <string>

#include "staticdet/error.hpp"

namespace sdet {

namespace {

constexpr const char* kReportSchema = "staticdet-report-v1";

void check_keys(const Json& j, const std::string& ctx,
                std::initializer_list<const char*> allowed) {
  require(j.is_object(), ctx, " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    require(known, ctx, " has unknown key \"", it.key(), "\"");
  }
}

const Json* find_key(const Json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const Json& need_key(const Json& j, const char* key, const std::string& ctx) {
  const Json* v = find_key(j, key);
  require(v != nullptr, ctx, " needs key \"", key, "\"");
  return *v;
}

double as_double(const Json& j, const std::string& ctx) {
  require(j.is_number(), ctx, " must be a number");
  return j.get<double>();
}

long long as_int(const Json& j, const std::string& ctx) {
  require(j.is_number_integer(), ctx, " must be an integer");
  return j.get<long long>();
}

std::uint64_t as_seed(const Json& j, const std::string& ctx) {
  require(j.is_number_integer(), ctx, " must be an integer");
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  long long v = j.get<long long>();
  require(v >= 0, ctx, " must be >= 0, got ", v);
  return static_cast<std::uint64_t>(v);
}

bool as_bool(const Json& j, const std::string& ctx) {
  require(j.is_boolean(), ctx, " must be a boolean");
  return j.get<bool>();
}

std::string as_string(const Json& j, const std::string& ctx) {
  require(j.is_string(), ctx, " must be a string");
  return j.get<std::string>();
}

PixelCoord as_coord(const Json& j, const std::string& ctx) {
  require(j.is_array() && j.size() == 2, ctx, " must be an [x, y] pair");
  return {static_cast<int>(as_int(j[0], ctx + "[0]")),
          static_cast<int>(as_int(j[1], ctx + "[1]"))};
}

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise_io("cannot open ", path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    raise_io("malformed JSON in ", path.string(), ": ", e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) raise_io("cannot create ", path.string());
  out << j.dump(2) << '\n';
  out.flush();
  if (!out) raise_io("write failed for ", path.string());
}

Json rgb_to_json(const Rgb& c) { return Json::array({c.r, c.g, c.b}); }

Rgb rgb_from_json(const Json& j, const std::string& ctx) {
  if (j.is_number()) {
    double v = j.get<double>();
    return {v, v, v};
  }
  require(j.is_array() && j.size() == 3, ctx,
          " must be a gray number or an [r, g, b] triple");
  return {as_double(j[0], ctx + "[0]"), as_double(j[1], ctx + "[1]"),
          as_double(j[2], ctx + "[2]")};
}

}  // namespace

PipelineConfig parse_pipeline_config(const Json& j) {
  check_keys(j, "config",
             {"input", "roi", "equalization", "dehaze", "mog", "threshold_mode",
              "morphology", "min_area", "output"});
  PipelineConfig c;

  const Json& input = need_key(j, "input", "config");
  check_keys(input, "input", {"dir", "pattern", "allow_gaps"});
  c.input.dir = as_string(need_key(input, "dir", "input"), "input.dir");
  require(!c.input.dir.empty(), "input.dir must not be empty");
  if (const Json* v = find_key(input, "pattern"))
    c.input.pattern = as_string(*v, "input.pattern");
  if (const Json* v = find_key(input, "allow_gaps"))
    c.input.allow_gaps = as_bool(*v, "input.allow_gaps");

  if (const Json* roi = find_key(j, "roi")) {
    check_keys(*roi, "roi", {"x", "y", "width", "height"});
    Roi r;
    r.x = static_cast<int>(as_int(need_key(*roi, "x", "roi"), "roi.x"));
    r.y = static_cast<int>(as_int(need_key(*roi, "y", "roi"), "roi.y"));
    r.width =
        static_cast<int>(as_int(need_key(*roi, "width", "roi"), "roi.width"));
    r.height =
        static_cast<int>(as_int(need_key(*roi, "height", "roi"), "roi.height"));
    require(r.x >= 0 && r.y >= 0, "roi origin must be non-negative, got (", r.x,
            ", ", r.y, ")");
    require(r.width >= 1 && r.height >= 1, "roi must be non-empty, got ",
            r.width, "x", r.height);
    c.roi = r;
  }

  if (const Json* eq = find_key(j, "equalization")) {
    check_keys(*eq, "equalization", {"enabled", "p", "q"});
    if (const Json* v = find_key(*eq, "enabled"))
      c.equalization_enabled = as_bool(*v, "equalization.enabled");
    if (const Json* v = find_key(*eq, "p"))
      c.equalization.p = static_cast<int>(as_int(*v, "equalization.p"));
    if (const Json* v = find_key(*eq, "q"))
      c.equalization.q = static_cast<int>(as_int(*v, "equalization.q"));
    require(c.equalization.p >= 1 && c.equalization.q >= 1,
            "equalization extents must be >= 1, got p=", c.equalization.p,
            " q=", c.equalization.q);
  }

  if (const Json* dh = find_key(j, "dehaze")) {
    check_keys(*dh, "dehaze",
               {"enabled", "patch_radius", "omega", "t_floor",
                "airlight_fraction"});
    if (const Json* v = find_key(*dh, "enabled"))
      c.dehaze_enabled = as_bool(*v, "dehaze.enabled");
    if (const Json* v = find_key(*dh, "patch_radius"))
      c.dehaze.patch_radius = static_cast<int>(as_int(*v, "dehaze.patch_radius"));
    if (const Json* v = find_key(*dh, "omega"))
      c.dehaze.omega = as_double(*v, "dehaze.omega");
    if (const Json* v = find_key(*dh, "t_floor"))
      c.dehaze.t_floor = as_double(*v, "dehaze.t_floor");
    if (const Json* v = find_key(*dh, "airlight_fraction"))
      c.dehaze.airlight_fraction = as_double(*v, "dehaze.airlight_fraction");
    require(c.dehaze.patch_radius >= 0, "dehaze.patch_radius must be >= 0, got ",
            c.dehaze.patch_radius);
    require(c.dehaze.omega >= 0.0 && c.dehaze.omega <= 1.0,
            "dehaze.omega must be in [0, 1], got ", c.dehaze.omega);
    require(c.dehaze.t_floor > 0.0 && c.dehaze.t_floor <= 1.0,
            "dehaze.t_floor must be in (0, 1], got ", c.dehaze.t_floor);
    require(c.dehaze.airlight_fraction > 0.0 && c.dehaze.airlight_fraction <= 1.0,
            "dehaze.airlight_fraction must be in (0, 1], got ",
            c.dehaze.airlight_fraction);
  }

  if (const Json* mog = find_key(j, "mog")) {
    check_keys(*mog, "mog",
               {"components", "learning_rate", "match_threshold",
                "background_portion", "initial_variance", "variance_floor"});
    if (const Json* v = find_key(*mog, "components"))
      c.mog.k = static_cast<int>(as_int(*v, "mog.components"));
    if (const Json* v = find_key(*mog, "learning_rate"))
      c.mog.learning_rate = as_double(*v, "mog.learning_rate");
    if (const Json* v = find_key(*mog, "match_threshold"))
      c.mog.match_threshold = as_double(*v, "mog.match_threshold");
    if (const Json* v = find_key(*mog, "background_portion"))
      c.mog.background_portion = as_double(*v, "mog.background_portion");
    if (const Json* v = find_key(*mog, "initial_variance"))
      c.mog.initial_variance = as_double(*v, "mog.initial_variance");
    if (const Json* v = find_key(*mog, "variance_floor"))
      c.mog.variance_floor = as_double(*v, "mog.variance_floor");
    c.mog.validate();
  }

  if (const Json* v = find_key(j, "threshold_mode")) {
    std::string mode = as_string(*v, "threshold_mode");
    if (mode == "per_frame")
      c.threshold_mode = ThresholdMode::kPerFrame;
    else if (mode == "frozen")
      c.threshold_mode = ThresholdMode::kFrozen;
    else
      raise("threshold_mode must be \"per_frame\" or \"frozen\", got \"", mode,
            "\"");
  }

  if (const Json* morph = find_key(j, "morphology")) {
    check_keys(*morph, "morphology", {"erode_size", "dilate_size"});
    if (const Json* v = find_key(*morph, "erode_size"))
      c.erode_size = static_cast<int>(as_int(*v, "morphology.erode_size"));
    if (const Json* v = find_key(*morph, "dilate_size"))
      c.dilate_size = static_cast<int>(as_int(*v, "morphology.dilate_size"));
    require(c.erode_size >= 1 && c.erode_size % 2 == 1,
            "morphology.erode_size must be odd and >= 1, got ", c.erode_size);
    require(c.dilate_size >= 1 && c.dilate_size % 2 == 1,
            "morphology.dilate_size must be odd and >= 1, got ", c.dilate_size);
  }

  if (const Json* v = find_key(j, "min_area")) {
    long long area = as_int(*v, "min_area");
    require(area >= 0, "min_area must be >= 0, got ", area);
    c.min_area = area;
  }

  if (const Json* out = find_key(j, "output")) {
    check_keys(*out, "output",
               {"dir", "emit_masks", "emit_overlays", "emit_report"});
    if (const Json* v = find_key(*out, "dir"))
      c.output.dir = as_string(*v, "output.dir");
    require(!c.output.dir.empty(), "output.dir must not be empty");
    if (const Json* v = find_key(*out, "emit_masks"))
      c.output.emit_masks = as_bool(*v, "output.emit_masks");
    if (const Json* v = find_key(*out, "emit_overlays"))
      c.output.emit_overlays = as_bool(*v, "output.emit_overlays");
    if (const Json* v = find_key(*out, "emit_report"))
      c.output.emit_report = as_bool(*v, "output.emit_report");
  }

  return c;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  return parse_pipeline_config(load_json_file(path));
}

Json pipeline_config_to_json(const PipelineConfig& c) {
  Json j;
  j["input"] = {{"dir", c.input.dir},
                {"pattern", c.input.pattern},
                {"allow_gaps", c.input.allow_gaps}};
  if (c.roi)
    j["roi"] = {{"x", c.roi->x},
                {"y", c.roi->y},
                {"width", c.roi->width},
                {"height", c.roi->height}};
  j["equalization"] = {{"enabled", c.equalization_enabled},
                       {"p", c.equalization.p},
                       {"q", c.equalization.q}};
  j["dehaze"] = {{"enabled", c.dehaze_enabled},
                 {"patch_radius", c.dehaze.patch_radius},
                 {"omega", c.dehaze.omega},
                 {"t_floor", c.dehaze.t_floor},
                 {"airlight_fraction", c.dehaze.airlight_fraction}};
  j["mog"] = {{"components", c.mog.k},
              {"learning_rate", c.mog.learning_rate},
              {"match_threshold", c.mog.match_threshold},
              {"background_portion", c.mog.background_portion},
              {"initial_variance", c.mog.initial_variance},
              {"variance_floor", c.mog.variance_floor}};
  j["threshold_mode"] =
      c.threshold_mode == ThresholdMode::kPerFrame ? "per_frame" : "frozen";
  j["morphology"] = {{"erode_size", c.erode_size},
                     {"dilate_size", c.dilate_size}};
  if (c.min_area) j["min_area"] = *c.min_area;
  j["output"] = {{"dir", c.output.dir},
                 {"emit_masks", c.output.emit_masks},
                 {"emit_overlays", c.output.emit_overlays},
                 {"emit_report", c.output.emit_report}};
  return j;
}

synth::Scenario parse_scenario(const Json& j) {
  check_keys(j, "scenario",
             {"width", "height", "frames", "seed", "background", "object",
              "degradations"});
  synth::Scenario s;
  s.width = static_cast<int>(as_int(need_key(j, "width", "scenario"), "width"));
  s.height =
      static_cast<int>(as_int(need_key(j, "height", "scenario"), "height"));
  s.frame_count =
      static_cast<int>(as_int(need_key(j, "frames", "scenario"), "frames"));
  if (const Json* v = find_key(j, "seed")) s.seed = as_seed(*v, "seed");

  if (const Json* bg = find_key(j, "background")) {
    std::string type = as_string(need_key(*bg, "type", "background"),
                                 "background.type");
    if (type == "uniform") {
      check_keys(*bg, "background", {"type", "value", "patches"});
      s.background.type = synth::BackgroundType::kUniform;
      if (const Json* v = find_key(*bg, "value"))
        s.background.value = as_double(*v, "background.value");
    } else if (type == "gradient") {
      check_keys(*bg, "background", {"type", "from", "to", "direction",
                                     "patches"});
      s.background.type = synth::BackgroundType::kGradient;
      s.background.from =
          as_double(need_key(*bg, "from", "background"), "background.from");
      s.background.to =
          as_double(need_key(*bg, "to", "background"), "background.to");
      if (const Json* v = find_key(*bg, "direction"))
        s.background.direction = as_string(*v, "background.direction");
    } else if (type == "speckle") {
      check_keys(*bg, "background", {"type", "base", "amplitude", "patches"});
      s.background.type = synth::BackgroundType::kSpeckle;
      s.background.base =
          as_double(need_key(*bg, "base", "background"), "background.base");
      s.background.amplitude = as_double(
          need_key(*bg, "amplitude", "background"), "background.amplitude");
    } else {
      raise("background.type must be \"uniform\", \"gradient\" or \"speckle\", "
            "got \"", type, "\"");
    }
    if (const Json* patches = find_key(*bg, "patches")) {
      require(patches->is_array(), "background.patches must be an array");
      for (std::size_t i = 0; i < patches->size(); ++i) {
        const Json& p = (*patches)[i];
        std::string ctx = "background.patches[" + std::to_string(i) + "]";
        check_keys(p, ctx, {"x", "y", "width", "height", "value"});
        synth::BackgroundPatch patch;
        patch.x = static_cast<int>(as_int(need_key(p, "x", ctx), ctx + ".x"));
        patch.y = static_cast<int>(as_int(need_key(p, "y", ctx), ctx + ".y"));
        patch.width =
            static_cast<int>(as_int(need_key(p, "width", ctx), ctx + ".width"));
        patch.height = static_cast<int>(
            as_int(need_key(p, "height", ctx), ctx + ".height"));
        patch.value = as_double(need_key(p, "value", ctx), ctx + ".value");
        s.background.patches.push_back(patch);
      }
    }
  }

  if (const Json* obj = find_key(j, "object")) {
    check_keys(*obj, "object",
               {"shape", "width", "height", "intensity", "entry_frame",
                "stop_frame", "start", "stop"});
    synth::ObjectSpec o;
    std::string shape =
        as_string(need_key(*obj, "shape", "object"), "object.shape");
    if (shape == "rectangle")
      o.shape = synth::ObjectShape::kRectangle;
    else if (shape == "ellipse")
      o.shape = synth::ObjectShape::kEllipse;
    else if (shape == "rock_pile")
      o.shape = synth::ObjectShape::kRockPile;
    else
      raise("object.shape must be \"rectangle\", \"ellipse\" or \"rock_pile\", "
            "got \"", shape, "\"");
    o.width =
        static_cast<int>(as_int(need_key(*obj, "width", "object"), "object.width"));
    o.height = static_cast<int>(
        as_int(need_key(*obj, "height", "object"), "object.height"));
    o.intensity =
        as_double(need_key(*obj, "intensity", "object"), "object.intensity");
    o.entry_frame = static_cast<int>(
        as_int(need_key(*obj, "entry_frame", "object"), "object.entry_frame"));
    o.stop_frame = static_cast<int>(
        as_int(need_key(*obj, "stop_frame", "object"), "object.stop_frame"));
    o.start = as_coord(need_key(*obj, "start", "object"), "object.start");
    o.stop = as_coord(need_key(*obj, "stop", "object"), "object.stop");
    s.object = o;
  }

  if (const Json* deg = find_key(j, "degradations")) {
    check_keys(*deg, "degradations",
               {"noise_sigma", "noise_onset", "illumination", "haze"});
    if (const Json* v = find_key(*deg, "noise_sigma"))
      s.degradations.noise_sigma = as_double(*v, "degradations.noise_sigma");
    if (const Json* v = find_key(*deg, "noise_onset"))
      s.degradations.noise_onset =
          static_cast<int>(as_int(*v, "degradations.noise_onset"));
    if (const Json* il = find_key(*deg, "illumination")) {
      check_keys(*il, "degradations.illumination",
                 {"direction", "strength", "onset"});
      synth::IlluminationSpec spec;
      spec.direction =
          as_string(need_key(*il, "direction", "degradations.illumination"),
                    "degradations.illumination.direction");
      spec.strength =
          as_double(need_key(*il, "strength", "degradations.illumination"),
                    "degradations.illumination.strength");
      if (const Json* v = find_key(*il, "onset"))
        spec.onset =
            static_cast<int>(as_int(*v, "degradations.illumination.onset"));
      s.degradations.illumination = spec;
    }
    if (const Json* hz = find_key(*deg, "haze")) {
      check_keys(*hz, "degradations.haze", {"t", "airlight", "onset"});
      synth::HazeSpec spec;
      spec.t = as_double(need_key(*hz, "t", "degradations.haze"),
                         "degradations.haze.t");
      if (const Json* v = find_key(*hz, "airlight"))
        spec.airlight = rgb_from_json(*v, "degradations.haze.airlight");
      if (const Json* v = find_key(*hz, "onset"))
        spec.onset = static_cast<int>(as_int(*v, "degradations.haze.onset"));
      s.degradations.haze = spec;
    }
  }

  s.validate();
  return s;
}

synth::Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(load_json_file(path));
}

Json scenario_to_json(const synth::Scenario& s) {
  Json j;
  j["width"] = s.width;
  j["height"] = s.height;
  j["frames"] = s.frame_count;
  j["seed"] = s.seed;
  Json bg;
  switch (s.background.type) {
    case synth::BackgroundType::kUniform:
      bg["type"] = "uniform";
      bg["value"] = s.background.value;
      break;
    case synth::BackgroundType::kGradient:
      bg["type"] = "gradient";
      bg["from"] = s.background.from;
      bg["to"] = s.background.to;
      bg["direction"] = s.background.direction;
      break;
    case synth::BackgroundType::kSpeckle:
      bg["type"] = "speckle";
      bg["base"] = s.background.base;
      bg["amplitude"] = s.background.amplitude;
      break;
  }
  if (!s.background.patches.empty()) {
    Json patches = Json::array();
    for (const synth::BackgroundPatch& p : s.background.patches)
      patches.push_back({{"x", p.x},
                         {"y", p.y},
                         {"width", p.width},
                         {"height", p.height},
                         {"value", p.value}});
    bg["patches"] = std::move(patches);
  }
  j["background"] = std::move(bg);
  if (s.object) {
    const synth::ObjectSpec& o = *s.object;
    const char* shape = o.shape == synth::ObjectShape::kRectangle ? "rectangle"
                        : o.shape == synth::ObjectShape::kEllipse ? "ellipse"
                                                                  : "rock_pile";
    j["object"] = {{"shape", shape},
                   {"width", o.width},
                   {"height", o.height},
                   {"intensity", o.intensity},
                   {"entry_frame", o.entry_frame},
                   {"stop_frame", o.stop_frame},
                   {"start", Json::array({o.start.x, o.start.y})},
                   {"stop", Json::array({o.stop.x, o.stop.y})}};
  }
  const synth::DegradationSpec& d = s.degradations;
  if (d.noise_sigma > 0.0 || d.illumination || d.haze) {
    Json deg;
    deg["noise_sigma"] = d.noise_sigma;
    deg["noise_onset"] = d.noise_onset;
    if (d.illumination)
      deg["illumination"] = {{"direction", d.illumination->direction},
                             {"strength", d.illumination->strength},
                             {"onset", d.illumination->onset}};
    if (d.haze)
      deg["haze"] = {{"t", d.haze->t},
                     {"airlight", rgb_to_json(d.haze->airlight)},
                     {"onset", d.haze->onset}};
    j["degradations"] = std::move(deg);
  }
  return j;
}

Json frame_report_to_json(const FrameReport& r) {
  Json j;
  j["index"] = r.index;
  j["threshold"] = r.threshold;
  j["popcounts"] = {{"difference", r.popcount_difference},
                    {"motion", r.popcount_motion},
                    {"fused", r.popcount_fused}};
  if (r.detection) {
    const DetectionSummary& d = *r.detection;
    Json hull = Json::array();
    for (const PixelCoord& p : d.hull) hull.push_back(Json::array({p.x, p.y}));
    j["detection"] = {
        {"area", d.area},
        {"bbox", Json::array({d.bbox.x, d.bbox.y, d.bbox.width, d.bbox.height})},
        {"centroid", Json::array({d.centroid_x, d.centroid_y})},
        {"hull", std::move(hull)}};
  } else {
    j["detection"] = nullptr;
  }
  j["timings_ms"] = {{"preprocess", r.timings.preprocess_ms},
                     {"framediff", r.timings.framediff_ms},
                     {"mog", r.timings.mog_ms},
                     {"post", r.timings.post_ms},
                     {"total", r.timings.total_ms}};
  return j;
}

FrameReport frame_report_from_json(const Json& j) {
  check_keys(j, "frame report",
             {"index", "threshold", "popcounts", "detection", "timings_ms"});
  FrameReport r;
  r.index = as_int(need_key(j, "index", "frame report"), "index");
  r.threshold = as_double(need_key(j, "threshold", "frame report"), "threshold");
  const Json& pc = need_key(j, "popcounts", "frame report");
  check_keys(pc, "popcounts", {"difference", "motion", "fused"});
  r.popcount_difference =
      as_int(need_key(pc, "difference", "popcounts"), "popcounts.difference");
  r.popcount_motion =
      as_int(need_key(pc, "motion", "popcounts"), "popcounts.motion");
  r.popcount_fused =
      as_int(need_key(pc, "fused", "popcounts"), "popcounts.fused");
  const Json& det = need_key(j, "detection", "frame report");
  if (!det.is_null()) {
    check_keys(det, "detection", {"area", "bbox", "centroid", "hull"});
    DetectionSummary d;
    d.area = as_int(need_key(det, "area", "detection"), "detection.area");
    const Json& bbox = need_key(det, "bbox", "detection");
    require(bbox.is_array() && bbox.size() == 4,
            "detection.bbox must be [x, y, width, height]");
    d.bbox.x = static_cast<int>(as_int(bbox[0], "detection.bbox[0]"));
    d.bbox.y = static_cast<int>(as_int(bbox[1], "detection.bbox[1]"));
    d.bbox.width = static_cast<int>(as_int(bbox[2], "detection.bbox[2]"));
    d.bbox.height = static_cast<int>(as_int(bbox[3], "detection.bbox[3]"));
    const Json& centroid = need_key(det, "centroid", "detection");
    require(centroid.is_array() && centroid.size() == 2,
            "detection.centroid must be [x, y]");
    d.centroid_x = as_double(centroid[0], "detection.centroid[0]");
    d.centroid_y = as_double(centroid[1], "detection.centroid[1]");
    const Json& hull = need_key(det, "hull", "detection");
    require(hull.is_array(), "detection.hull must be an array");
    for (std::size_t i = 0; i < hull.size(); ++i)
      d.hull.push_back(
          as_coord(hull[i], "detection.hull[" + std::to_string(i) + "]"));
    r.detection = std::move(d);
  }
  const Json& tm = need_key(j, "timings_ms", "frame report");
  check_keys(tm, "timings_ms", {"preprocess", "framediff", "mog", "post",
                                "total"});
  r.timings.preprocess_ms =
      as_double(need_key(tm, "preprocess", "timings_ms"), "timings_ms.preprocess");
  r.timings.framediff_ms =
      as_double(need_key(tm, "framediff", "timings_ms"), "timings_ms.framediff");
  r.timings.mog_ms = as_double(need_key(tm, "mog", "timings_ms"), "timings_ms.mog");
  r.timings.post_ms =
      as_double(need_key(tm, "post", "timings_ms"), "timings_ms.post");
  r.timings.total_ms =
      as_double(need_key(tm, "total", "timings_ms"), "timings_ms.total");
  return r;
}

void write_report(const std::filesystem::path& path, const Json& config_echo,
                  const std::vector<FrameReport>& frames) {
  Json j;
  j["schema"] = kReportSchema;
  j["config"] = config_echo;
  Json arr = Json::array();
  for (const FrameReport& r : frames) arr.push_back(frame_report_to_json(r));
  j["frames"] = std::move(arr);
  write_json_file(path, j);
}

ReportDocument parse_report(const std::filesystem::path& path) {
  Json j = load_json_file(path);
  check_keys(j, "report", {"schema", "config", "frames"});
  std::string schema =
      as_string(need_key(j, "schema", "report"), "report.schema");
  require(schema == kReportSchema, "unsupported report schema \"", schema,
          "\"; expected \"", kReportSchema, "\"");
  ReportDocument doc;
  doc.config = need_key(j, "config", "report");
  const Json& frames = need_key(j, "frames", "report");
  require(frames.is_array(), "report.frames must be an array");
  for (const Json& f : frames)
    doc.frames.push_back(frame_report_from_json(f));
  return doc;
}

}  // namespace sdet
