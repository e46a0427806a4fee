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

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "staticdet/config.hpp"
#include "staticdet/pipeline.hpp"
#include "staticdet/synthgen.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& input_dir,
            const std::string& out_dir, bool emit_masks, bool emit_overlays,
            bool freeze_threshold) {
  sdet::PipelineConfig config = sdet::load_pipeline_config(config_path);
  if (!input_dir.empty()) config.input.dir = input_dir;
  if (!out_dir.empty()) config.output.dir = out_dir;
  if (emit_masks) config.output.emit_masks = true;
  if (emit_overlays) config.output.emit_overlays = true;
  if (freeze_threshold) config.threshold_mode = sdet::ThresholdMode::kFrozen;
  std::vector<sdet::FrameReport> reports = sdet::run_pipeline(config);
  long long detections = std::count_if(
      reports.begin(), reports.end(),
      [](const sdet::FrameReport& r) { return r.detection.has_value(); });
  std::cout << "processed " << reports.size() << " frames, " << detections
            << " with a detection\n";
  if (config.output.emit_report)
    std::cout << "report: "
              << (std::filesystem::path(config.output.dir) / "report.json")
                     .string()
              << "\n";
  return 0;
}

int cmd_gen(const std::string& scenario_path, const std::string& out_dir) {
  sdet::synth::Scenario scenario = sdet::load_scenario(scenario_path);
  long long frames = sdet::synth::write_sequence(scenario, out_dir);
  std::cout << "wrote " << frames << " frames to " << out_dir << "\n";
  return 0;
}

int cmd_eval(const std::string& pred_dir, const std::string& truth_dir,
             const std::string& report_path) {
  sdet::EvalSummary summary = sdet::evaluate_masks(pred_dir, truth_dir);
  std::cout << "frames: " << summary.per_frame.size()
            << "  mean_iou: " << summary.mean_iou
            << "  min_iou: " << summary.min_iou << "\n";
  if (!report_path.empty()) {
    sdet::Json j;
    j["mean_iou"] = summary.mean_iou;
    j["min_iou"] = summary.min_iou;
    sdet::Json per_frame = sdet::Json::array();
    for (const sdet::EvalEntry& e : summary.per_frame)
      per_frame.push_back({{"index", e.index}, {"iou", e.iou}});
    j["per_frame"] = std::move(per_frame);
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "staticdet: error: cannot create " << report_path << "\n";
      return 1;
    }
    out << j.dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static-object detection in video frame sequences"};
  app.require_subcommand(1);

  std::string config_path, input_dir, out_dir;
  bool emit_masks = false, emit_overlays = false, freeze_threshold = false;
  CLI::App* run = app.add_subcommand("run", "Run the detector over a sequence");
  run->add_option("--config", config_path, "Pipeline config JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--input", input_dir, "Override the configured input directory");
  run->add_option("--out", out_dir, "Override the configured output directory");
  run->add_flag("--emit-masks", emit_masks, "Write per-stage masks");
  run->add_flag("--emit-overlays", emit_overlays, "Write hull overlay images");
  run->add_flag("--freeze-threshold", freeze_threshold,
                "Latch the difference threshold after the first post-reference "
                "frame");

  std::string scenario_path, gen_out = "sequence";
  CLI::App* gen =
      app.add_subcommand("gen", "Generate a synthetic sequence with ground truth");
  gen->add_option("--scenario", scenario_path, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  gen->add_option("--out", gen_out, "Output directory");

  std::string pred_dir, truth_dir, report_path;
  CLI::App* eval =
      app.add_subcommand("eval", "Score predicted masks against ground truth");
  eval->add_option("--pred", pred_dir, "Directory of predicted masks")
      ->required();
  eval->add_option("--truth", truth_dir, "Directory of ground-truth masks")
      ->required();
  eval->add_option("--report", report_path, "Write per-frame scores as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(config_path, input_dir, out_dir, emit_masks, emit_overlays,
                     freeze_threshold);
    if (gen->parsed()) return cmd_gen(scenario_path, gen_out);
    if (eval->parsed()) return cmd_eval(pred_dir, truth_dir, report_path);
  } catch (const std::exception& e) {
    std::cerr << "staticdet: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
