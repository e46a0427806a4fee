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

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "doctest.h"
#include "staticdet/config.hpp"
#include "staticdet/error.hpp"
#include "staticdet/image_io.hpp"
#include "support/temp_dir.hpp"

namespace {

using sdet::BinaryMask;
using sdet::Frame;
using sdet::FrameReport;
using sdet::IoError;
using sdet::Json;
using sdet::PipelineConfig;
using sdet::PreconditionError;
using sdet::testing::TempDir;

void write_bytes(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

/// Runs `fn`, requiring it to throw E with `needle` somewhere in the message.
template <typename E, typename Fn>
void check_throws_with(Fn&& fn, const std::string& needle) {
  bool threw = false;
  try {
    fn();
  } catch (const E& e) {
    threw = true;
    std::string msg = e.what();
    INFO("message: " << msg << "\nexpected substring: " << needle);
    CHECK(msg.find(needle) != std::string::npos);
  }
  CHECK(threw);
}

TEST_SUITE_BEGIN("image_io");

TEST_CASE("pgm and ppm round-trips preserve 8-bit values exactly") {
  TempDir tmp;

  Frame gray(23, 11, 1);
  for (std::size_t i = 0; i < gray.data.size(); ++i)
    gray.data[i] = static_cast<double>((i * 7) % 256) / 255.0;
  sdet::write_image(tmp / "gray.pgm", gray);
  Frame gray2 = sdet::load_image(tmp / "gray.pgm");
  REQUIRE(gray2.width == gray.width);
  REQUIRE(gray2.height == gray.height);
  REQUIRE(gray2.channels == 1);
  CHECK(gray2.data == gray.data);

  Frame rgb(9, 14, 3);
  for (std::size_t i = 0; i < rgb.data.size(); ++i)
    rgb.data[i] = static_cast<double>((i * 13 + 5) % 256) / 255.0;
  sdet::write_image(tmp / "color.ppm", rgb);
  Frame rgb2 = sdet::load_image(tmp / "color.ppm");
  REQUIRE(rgb2.channels == 3);
  CHECK(rgb2.data == rgb.data);
}

TEST_CASE("writing quantizes to round-to-nearest 8-bit levels") {
  TempDir tmp;
  Frame f(4, 1, 1);
  f.data = {0.0, 1.0, 0.5, 0.002};  // 0.5*255 = 127.5 rounds away from zero
  sdet::write_image(tmp / "q.pgm", f);
  Frame g = sdet::load_image(tmp / "q.pgm");
  CHECK(g.data[0] == 0.0);
  CHECK(g.data[1] == 1.0);
  CHECK(g.data[2] == 128.0 / 255.0);
  CHECK(g.data[3] == 1.0 / 255.0);  // llround(0.51) = 1
}

TEST_CASE("header comments and non-255 maxval are honored on load") {
  TempDir tmp;
  std::string pgm =
      "P5\n# a comment line\n3 # trailing comment\n# another\n1\n100\n";
  pgm += static_cast<char>(0);
  pgm += static_cast<char>(50);
  pgm += static_cast<char>(100);
  write_bytes(tmp / "c.pgm", pgm);
  Frame f = sdet::load_image(tmp / "c.pgm");
  REQUIRE(f.width == 3);
  REQUIRE(f.height == 1);
  CHECK(f.data[0] == 0.0);
  CHECK(f.data[1] == 0.5);
  CHECK(f.data[2] == 1.0);
}

TEST_CASE("malformed image files are IoError, never silent garbage") {
  TempDir tmp;

  SUBCASE("missing file") {
    CHECK_THROWS_AS(sdet::load_image(tmp / "nope.pgm"), IoError);
  }
  SUBCASE("ascii magic is unsupported") {
    write_bytes(tmp / "bad.pgm", "P3\n1 1\n255\n0 0 0\n");
    check_throws_with<IoError>(
        [&] { sdet::load_image(tmp / "bad.pgm"); }, "unsupported image format");
  }
  SUBCASE("truncated pixel payload") {
    std::string pgm = "P5\n4 4\n255\n";
    pgm += std::string(7, '\x40');  // 16 bytes promised, 7 delivered
    write_bytes(tmp / "trunc.pgm", pgm);
    check_throws_with<IoError>(
        [&] { sdet::load_image(tmp / "trunc.pgm"); }, "truncated pixel data");
  }
  SUBCASE("zero and negative dimensions") {
    write_bytes(tmp / "z.pgm", "P5\n0 3\n255\n");
    check_throws_with<IoError>(
        [&] { sdet::load_image(tmp / "z.pgm"); }, "implausible image dimensions");
    write_bytes(tmp / "n.pgm", "P5\n4 -2\n255\n");
    CHECK_THROWS_AS(sdet::load_image(tmp / "n.pgm"), IoError);
  }
  SUBCASE("maxval outside 8-bit range") {
    write_bytes(tmp / "m0.pgm", "P5\n1 1\n0\n\x00");
    CHECK_THROWS_AS(sdet::load_image(tmp / "m0.pgm"), IoError);
    write_bytes(tmp / "m300.pgm", "P5\n1 1\n300\n\x00");
    check_throws_with<IoError>(
        [&] { sdet::load_image(tmp / "m300.pgm"); }, "8-bit range");
  }
  SUBCASE("non-numeric header field") {
    write_bytes(tmp / "h.pgm", "P5\nwide 3\n255\n");
    check_throws_with<IoError>([&] { sdet::load_image(tmp / "h.pgm"); },
                               "cannot parse width");
  }
}

TEST_CASE("mask files hold only 0 and 255 and round-trip losslessly") {
  TempDir tmp;
  BinaryMask m(6, 5);
  for (std::size_t i = 0; i < m.data.size(); ++i) m.data[i] = (i % 3 == 0);
  sdet::write_mask(tmp / "m.pgm", m);
  BinaryMask m2 = sdet::load_mask(tmp / "m.pgm");
  REQUIRE(m2.width == 6);
  REQUIRE(m2.height == 5);
  CHECK(m2.data == m.data);

  SUBCASE("gray levels other than 0/255 are rejected") {
    std::string pgm = "P5\n2 1\n255\n";
    pgm += static_cast<char>(255);
    pgm += static_cast<char>(7);
    write_bytes(tmp / "gray.pgm", pgm);
    check_throws_with<IoError>([&] { sdet::load_mask(tmp / "gray.pgm"); },
                               "only 0 and 255 are valid");
  }
  SUBCASE("color files are not masks") {
    Frame rgb(2, 2, 3);
    sdet::write_image(tmp / "rgb.ppm", rgb);
    check_throws_with<IoError>([&] { sdet::load_mask(tmp / "rgb.ppm"); },
                               "single-channel");
  }
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("config_json");

Json full_config_json() {
  return Json::parse(R"json({
    "input": {"dir": "frames", "pattern": "img_%04d.ppm", "allow_gaps": true},
    "roi": {"x": 2, "y": 3, "width": 40, "height": 30},
    "equalization": {"enabled": true, "p": 9, "q": 11},
    "dehaze": {"enabled": true, "patch_radius": 5, "omega": 0.9,
               "t_floor": 0.2, "airlight_fraction": 0.01},
    "mog": {"components": 4, "learning_rate": 0.02, "match_threshold": 3.0,
            "background_portion": 0.6, "initial_variance": 0.01,
            "variance_floor": 0.0001},
    "threshold_mode": "frozen",
    "morphology": {"erode_size": 5, "dilate_size": 7},
    "min_area": 123,
    "output": {"dir": "results", "emit_masks": true, "emit_overlays": true,
               "emit_report": false}
  })json");
}

TEST_CASE("full pipeline config survives a parse/serialize round-trip") {
  Json j = full_config_json();
  PipelineConfig c = sdet::parse_pipeline_config(j);

  CHECK(c.input.dir == "frames");
  CHECK(c.input.pattern == "img_%04d.ppm");
  CHECK(c.input.allow_gaps == true);
  REQUIRE(c.roi.has_value());
  CHECK(c.roi->x == 2);
  CHECK(c.roi->height == 30);
  CHECK(c.equalization.p == 9);
  CHECK(c.equalization.q == 11);
  CHECK(c.dehaze.omega == 0.9);
  CHECK(c.dehaze.patch_radius == 5);
  CHECK(c.mog.k == 4);
  CHECK(c.mog.background_portion == 0.6);
  CHECK(c.threshold_mode == sdet::ThresholdMode::kFrozen);
  CHECK(c.erode_size == 5);
  CHECK(c.dilate_size == 7);
  REQUIRE(c.min_area.has_value());
  CHECK(*c.min_area == 123);
  CHECK(c.output.dir == "results");
  CHECK(c.output.emit_report == false);

  // Serializing and reparsing must reach a fixed point (idempotent echo).
  Json echo = sdet::pipeline_config_to_json(c);
  PipelineConfig c2 = sdet::parse_pipeline_config(echo);
  CHECK(sdet::pipeline_config_to_json(c2) == echo);
  CHECK(echo == j);  // the full document is already in canonical form
}

TEST_CASE("minimal config gets documented defaults") {
  PipelineConfig c =
      sdet::parse_pipeline_config(Json::parse(R"({"input": {"dir": "d"}})"));
  CHECK(c.input.pattern == "frame_%06d.ppm");
  CHECK(c.input.allow_gaps == false);
  CHECK_FALSE(c.roi.has_value());
  CHECK(c.equalization_enabled == true);
  CHECK(c.equalization.p == 7);
  CHECK(c.equalization.q == 7);
  CHECK(c.dehaze_enabled == true);
  CHECK(c.dehaze.patch_radius == 7);
  CHECK(c.dehaze.omega == 0.95);
  CHECK(c.dehaze.t_floor == 0.1);
  CHECK(c.dehaze.airlight_fraction == 0.001);
  CHECK(c.mog.k == 3);
  CHECK(c.mog.learning_rate == 0.01);
  CHECK(c.mog.match_threshold == 2.5);
  CHECK(c.mog.background_portion == 0.7);
  CHECK(c.threshold_mode == sdet::ThresholdMode::kPerFrame);
  CHECK(c.erode_size == 3);
  CHECK(c.dilate_size == 5);
  CHECK_FALSE(c.min_area.has_value());
  CHECK(c.output.dir == "out");
  CHECK(c.output.emit_masks == false);
  CHECK(c.output.emit_report == true);
}

TEST_CASE("config parsing is strict about keys, types and ranges") {
  auto parse = [](const char* text) {
    return sdet::parse_pipeline_config(Json::parse(text));
  };

  SUBCASE("unknown keys are named in the error") {
    check_throws_with<PreconditionError>(
        [&] { parse(R"({"inputt": {"dir": "d"}})"); },
        "config has unknown key \"inputt\"");
    check_throws_with<PreconditionError>(
        [&] { parse(R"({"input": {"dir": "d", "glob": "*"}})"); },
        "input has unknown key \"glob\"");
  }
  SUBCASE("missing required keys are named") {
    check_throws_with<PreconditionError>(
        [&] { parse(R"({"input": {"pattern": "f_%d.ppm"}})"); },
        "input needs key \"dir\"");
    check_throws_with<PreconditionError>([&] { parse(R"({})"); },
                                         "config needs key \"input\"");
  }
  SUBCASE("type mismatches are named") {
    check_throws_with<PreconditionError>(
        [&] { parse(R"({"input": {"dir": "d", "allow_gaps": 1}})"); },
        "input.allow_gaps must be a boolean");
    check_throws_with<PreconditionError>(
        [&] { parse(R"({"input": {"dir": "d"}, "min_area": 1.5})"); },
        "min_area must be an integer");
  }
  SUBCASE("out-of-range values are rejected") {
    CHECK_THROWS_AS(parse(R"({"input": {"dir": ""}})"), PreconditionError);
    CHECK_THROWS_AS(
        parse(R"({"input": {"dir": "d"}, "dehaze": {"omega": 1.5}})"),
        PreconditionError);
    CHECK_THROWS_AS(
        parse(R"({"input": {"dir": "d"}, "dehaze": {"t_floor": 0.0}})"),
        PreconditionError);
    CHECK_THROWS_AS(
        parse(
            R"({"input": {"dir": "d"}, "dehaze": {"airlight_fraction": 0.0}})"),
        PreconditionError);
    CHECK_THROWS_AS(
        parse(R"({"input": {"dir": "d"}, "morphology": {"erode_size": 4}})"),
        PreconditionError);
    CHECK_THROWS_AS(
        parse(R"({"input": {"dir": "d"}, "equalization": {"p": 0}})"),
        PreconditionError);
    CHECK_THROWS_AS(parse(R"({"input": {"dir": "d"}, "min_area": -1})"),
                    PreconditionError);
    CHECK_THROWS_AS(
        parse(R"({"input": {"dir": "d"}, "roi": {"x": -1, "y": 0,
                  "width": 5, "height": 5}})"),
        PreconditionError);
    CHECK_THROWS_AS(
        parse(R"({"input": {"dir": "d"}, "mog": {"components": 0}})"),
        PreconditionError);
  }
  SUBCASE("threshold_mode accepts only the two documented names") {
    CHECK(sdet::parse_pipeline_config(
              Json::parse(
                  R"({"input": {"dir": "d"}, "threshold_mode": "per_frame"})"))
              .threshold_mode == sdet::ThresholdMode::kPerFrame);
    CHECK(sdet::parse_pipeline_config(
              Json::parse(
                  R"({"input": {"dir": "d"}, "threshold_mode": "frozen"})"))
              .threshold_mode == sdet::ThresholdMode::kFrozen);
    check_throws_with<PreconditionError>(
        [&] { parse(R"({"input": {"dir": "d"}, "threshold_mode": "auto"})"); },
        "threshold_mode must be \"per_frame\" or \"frozen\"");
  }
}

TEST_CASE("config files load from disk and malformed JSON is IoError") {
  TempDir tmp;
  sdet::Json j = full_config_json();
  std::ofstream(tmp / "cfg.json") << j.dump(2) << '\n';
  PipelineConfig c = sdet::load_pipeline_config(tmp / "cfg.json");
  CHECK(c.input.dir == "frames");

  write_bytes(tmp / "broken.json", "{\"input\": ");
  check_throws_with<IoError>(
      [&] { sdet::load_pipeline_config(tmp / "broken.json"); },
      "malformed JSON");
  CHECK_THROWS_AS(sdet::load_pipeline_config(tmp / "absent.json"), IoError);
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("scenario_json");

Json full_scenario_json() {
  return Json::parse(R"json({
    "width": 64,
    "height": 48,
    "frames": 30,
    "seed": 42,
    "background": {
      "type": "speckle", "base": 0.4, "amplitude": 0.1,
      "patches": [{"x": 5, "y": 6, "width": 10, "height": 8, "value": 0.9}]
    },
    "object": {
      "shape": "ellipse", "width": 12, "height": 10, "intensity": 0.85,
      "entry_frame": 4, "stop_frame": 15, "start": [8, 8], "stop": [40, 30]
    },
    "degradations": {
      "noise_sigma": 0.02,
      "noise_onset": 3,
      "illumination": {"direction": "horizontal", "strength": 0.2, "onset": 5},
      "haze": {"t": 0.7, "airlight": 0.9, "onset": 8}
    }
  })json");
}

TEST_CASE("scenario parse and serialize reach a fixed point") {
  sdet::synth::Scenario s = sdet::parse_scenario(full_scenario_json());
  CHECK(s.width == 64);
  CHECK(s.seed == 42);
  CHECK(s.background.type == sdet::synth::BackgroundType::kSpeckle);
  REQUIRE(s.background.patches.size() == 1);
  CHECK(s.background.patches[0].value == 0.9);
  REQUIRE(s.object.has_value());
  CHECK(s.object->shape == sdet::synth::ObjectShape::kEllipse);
  CHECK(s.object->start.x == 8);
  CHECK(s.object->stop.y == 30);
  REQUIRE(s.degradations.illumination.has_value());
  CHECK(s.degradations.illumination->onset == 5);
  REQUIRE(s.degradations.haze.has_value());
  // A gray airlight number expands to an equal [r, g, b] triple.
  CHECK(s.degradations.haze->airlight.r == 0.9);
  CHECK(s.degradations.haze->airlight.g == 0.9);
  CHECK(s.degradations.haze->airlight.b == 0.9);

  Json echo = sdet::scenario_to_json(s);
  sdet::synth::Scenario s2 = sdet::parse_scenario(echo);
  CHECK(sdet::scenario_to_json(s2) == echo);
  CHECK(echo["degradations"]["haze"]["airlight"] ==
        Json::array({0.9, 0.9, 0.9}));
}

TEST_CASE("every background type round-trips with its own fields") {
  auto rt = [](const char* text) {
    Json j = Json::parse(text);
    Json echo = sdet::scenario_to_json(sdet::parse_scenario(j));
    return echo["background"];
  };
  Json u = rt(R"({"width": 8, "height": 8, "frames": 1,
                  "background": {"type": "uniform", "value": 0.25}})");
  CHECK(u["type"] == "uniform");
  CHECK(u["value"] == 0.25);

  Json g = rt(R"({"width": 8, "height": 8, "frames": 1,
                  "background": {"type": "gradient", "from": 0.1, "to": 0.7,
                                 "direction": "vertical"}})");
  CHECK(g["type"] == "gradient");
  CHECK(g["from"] == 0.1);
  CHECK(g["direction"] == "vertical");

  check_throws_with<PreconditionError>(
      [&] { rt(R"({"width": 8, "height": 8, "frames": 1,
                   "background": {"type": "plaid"}})"); },
      "background.type must be");
  check_throws_with<PreconditionError>(
      [&] { rt(R"({"width": 8, "height": 8, "frames": 1,
                   "background": {"type": "gradient", "to": 0.7}})"); },
      "background needs key \"from\"");
  // Fields from the wrong background type are unknown keys, not ignored.
  check_throws_with<PreconditionError>(
      [&] { rt(R"({"width": 8, "height": 8, "frames": 1,
                   "background": {"type": "uniform", "base": 0.4}})"); },
      "background has unknown key \"base\"");
}

TEST_CASE("scenario parsing rejects bad structure and bad values") {
  auto parse = [](const char* text) {
    return sdet::parse_scenario(Json::parse(text));
  };

  check_throws_with<PreconditionError>(
      [&] { parse(R"({"height": 8, "frames": 1})"); },
      "scenario needs key \"width\"");
  check_throws_with<PreconditionError>(
      [&] {
        parse(R"({"width": 8, "height": 8, "frames": 1,
                  "object": {"shape": "rectangle", "width": 2, "height": 2,
                             "intensity": 0.5, "entry_frame": 0,
                             "start": [1, 1], "stop": [3, 3]}})");
      },
      "object needs key \"stop_frame\"");
  check_throws_with<PreconditionError>(
      [&] { parse(R"({"width": 8, "height": 8, "frames": 1, "seed": -5})"); },
      "seed must be >= 0");
  CHECK_THROWS_AS(
      parse(R"({"width": 8, "height": 8, "frames": 1, "fog": true})"),
      PreconditionError);

  // Semantic validation runs inside parsing: a stop frame past the end of
  // the sequence is caught here, not at generation time.
  CHECK_THROWS_AS(
      parse(R"({"width": 20, "height": 20, "frames": 5,
                "object": {"shape": "rectangle", "width": 2, "height": 2,
                           "intensity": 0.5, "entry_frame": 1, "stop_frame": 9,
                           "start": [1, 1], "stop": [5, 5]}})"),
      PreconditionError);

  // 64-bit seeds above the signed range still parse (JSON unsigned numbers).
  sdet::synth::Scenario s = parse(
      R"({"width": 8, "height": 8, "frames": 1, "seed": 18446744073709551615})");
  CHECK(s.seed == 18446744073709551615ull);
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("report_json");

std::vector<FrameReport> sample_reports() {
  FrameReport a;
  a.index = 0;
  a.threshold = 0.0;
  a.popcount_difference = 0;
  a.popcount_motion = 0;
  a.popcount_fused = 0;
  a.timings = {0.25, 0.5, 1.0, 0.125, 1.875};

  FrameReport b;
  b.index = 1;
  b.threshold = 0.0625;  // dyadic, so text round-trips are exact by eye too
  b.popcount_difference = 120;
  b.popcount_motion = 30;
  b.popcount_fused = 95;
  sdet::DetectionSummary d;
  d.area = 95;
  d.bbox = {4, 5, 10, 12};
  d.centroid_x = 8.5;
  d.centroid_y = 10.75;
  d.hull = {{4, 5}, {13, 5}, {13, 16}, {4, 16}};
  b.detection = d;
  b.timings = {0.1, 0.2, 0.3, 0.4, 1.0};
  return {a, b};
}

TEST_CASE("reports round-trip through disk with full equality") {
  TempDir tmp;
  std::vector<FrameReport> frames = sample_reports();
  // Thresholds with no finite binary expansion must survive the text format
  // too (nlohmann prints shortest-round-trip doubles).
  frames[1].threshold = 0.1 + 1e-17;
  frames[1].timings.total_ms = 3.3333333333333335;

  Json cfg_echo = sdet::pipeline_config_to_json(
      sdet::parse_pipeline_config(Json::parse(R"({"input": {"dir": "d"}})")));
  sdet::write_report(tmp / "report.json", cfg_echo, frames);

  sdet::ReportDocument doc = sdet::parse_report(tmp / "report.json");
  CHECK(doc.config == cfg_echo);
  REQUIRE(doc.frames.size() == frames.size());
  CHECK(doc.frames[0] == frames[0]);
  CHECK(doc.frames[1] == frames[1]);
  CHECK(doc.frames == frames);

  SUBCASE("serialization is byte-stable across identical writes") {
    sdet::write_report(tmp / "again.json", cfg_echo, frames);
    std::ifstream f1(tmp / "report.json", std::ios::binary);
    std::ifstream f2(tmp / "again.json", std::ios::binary);
    std::string s1((std::istreambuf_iterator<char>(f1)),
                   std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)),
                   std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
    CHECK(!s1.empty());
    CHECK(s1.back() == '\n');
  }
}

TEST_CASE("report schema string is enforced") {
  TempDir tmp;
  Json j;
  j["schema"] = "staticdet-report-v999";
  j["config"] = Json::object();
  j["frames"] = Json::array();
  std::ofstream(tmp / "r.json") << j.dump(2);
  check_throws_with<PreconditionError>(
      [&] { sdet::parse_report(tmp / "r.json"); }, "unsupported report schema");
}

TEST_CASE("frame report parsing is strict") {
  Json good = sdet::frame_report_to_json(sample_reports()[1]);

  Json unknown = good;
  unknown["extra"] = 1;
  check_throws_with<PreconditionError>(
      [&] { sdet::frame_report_from_json(unknown); },
      "frame report has unknown key \"extra\"");

  Json missing = good;
  missing["popcounts"].erase("fused");
  check_throws_with<PreconditionError>(
      [&] { sdet::frame_report_from_json(missing); },
      "popcounts needs key \"fused\"");

  Json bad_bbox = good;
  bad_bbox["detection"]["bbox"] = Json::array({1, 2, 3});
  check_throws_with<PreconditionError>(
      [&] { sdet::frame_report_from_json(bad_bbox); },
      "detection.bbox must be");

  // Null detection is the documented representation of "nothing found".
  Json none = sdet::frame_report_to_json(sample_reports()[0]);
  CHECK(none["detection"].is_null());
  FrameReport back = sdet::frame_report_from_json(none);
  CHECK_FALSE(back.detection.has_value());
}

TEST_SUITE_END();

}  // namespace
