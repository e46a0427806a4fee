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

#include <nlohmann/json.hpp>

#include "staticdet/pipeline.hpp"
#include "staticdet/synthgen.hpp"

namespace sdet {

using Json = nlohmann::ordered_json;

/// Strict parsers: unknown keys and type mismatches are errors, every field
/// is range-checked on entry. Schemas are documented in the README.
PipelineConfig parse_pipeline_config(const Json& j);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);
Json pipeline_config_to_json(const PipelineConfig& c);

synth::Scenario parse_scenario(const Json& j);
synth::Scenario load_scenario(const std::filesystem::path& path);
Json scenario_to_json(const synth::Scenario& s);

struct ReportDocument {
  Json config;
  std::vector<FrameReport> frames;
};

/// Schema-versioned run report with insertion-ordered keys, so identical
/// runs serialize byte-identically (timings are the only nondeterministic
/// fields).
void write_report(const std::filesystem::path& path, const Json& config_echo,
                  const std::vector<FrameReport>& frames);
ReportDocument parse_report(const std::filesystem::path& path);

Json frame_report_to_json(const FrameReport& r);
FrameReport frame_report_from_json(const Json& j);

}  // namespace sdet
