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

#include <fstream>
#include <string>

#include "staticdet/config.hpp"
#include "staticdet/error.hpp"
#include "staticdet/image_io.hpp"
#include "staticdet/synthgen.hpp"

namespace sdet::synth {

namespace fs = std::filesystem;

namespace {

std::string padded_index(long long index) {
  std::string num = std::to_string(index);
  if (num.size() < 6) num.insert(0, 6 - num.size(), '0');
  return num;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) raise_io("cannot create directory ", dir.string(), ": ", ec.message());
}

}  // namespace

long long write_sequence(const Scenario& s, const fs::path& dir) {
  ensure_dir(dir / "frames");
  ensure_dir(dir / "truth");
  ensure_dir(dir / "clean");
  Json flags = Json::array();
  long long count = 0;
  generate_stream(s, [&](FrameRecord&& rec) {
    std::string idx = padded_index(rec.index);
    write_image(dir / "frames" / ("frame_" + idx + ".ppm"), rec.degraded);
    write_mask(dir / "truth" / ("mask_" + idx + ".pgm"), rec.mask);
    write_image(dir / "clean" / ("clean_" + idx + ".ppm"), rec.clean);
    flags.push_back(motion_flag_name(rec.flag));
    ++count;
  });
  Json manifest;
  manifest["schema"] = "staticdet-sequence-v1";
  manifest["scenario"] = scenario_to_json(s);
  manifest["motion_flags"] = std::move(flags);
  std::ofstream out(dir / "manifest.json");
  if (!out) raise_io("cannot create ", (dir / "manifest.json").string());
  out << manifest.dump(2) << '\n';
  out.flush();
  if (!out) raise_io("write failed for ", (dir / "manifest.json").string());
  return count;
}

}  // namespace sdet::synth
