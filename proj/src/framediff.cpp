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

#include "staticdet/framediff.hpp"

#include <cmath>

namespace sdet {

void ReferenceFrame::set(const Frame& f) {
  require(!luma_.has_value(),
          "reference frame is already set; it can only be set once per run");
  // Single-channel input counts as luma already, mirroring what
  // frame_difference assumes about its current frame; converting it again
  // would make a frame differ from itself.
  if (f.channels == 1) {
    f.validate("reference frame");
    luma_ = f;
  } else {
    luma_ = luma_frame(f);
  }
}

const Frame& ReferenceFrame::luma() const {
  require(luma_.has_value(), "no reference frame has been set");
  return *luma_;
}

Frame frame_difference(const Frame& current, const ReferenceFrame& ref) {
  const Frame& r = ref.luma();
  require(current.width == r.width && current.height == r.height,
          "current frame ", current.width, "x", current.height,
          " does not match reference ", r.width, "x", r.height);
  Frame cur = current.channels == 1 ? current : luma_frame(current);
  if (current.channels == 1) cur.validate("frame_difference input");
  Frame out(r.width, r.height, 1);
  for (std::size_t i = 0; i < out.data.size(); ++i)
    out.data[i] = std::fabs(cur.data[i] - r.data[i]);
  return out;
}

BinaryMask threshold_mask(const Frame& diff, double threshold) {
  require(diff.channels == 1, "threshold_mask expects a single channel, got ",
          diff.channels);
  require(std::isfinite(threshold), "threshold must be finite, got ", threshold);
  BinaryMask out(diff.width, diff.height);
  for (std::size_t i = 0; i < diff.data.size(); ++i)
    out.data[i] = diff.data[i] > threshold ? 1 : 0;
  return out;
}

BinaryMask threshold_mask(const Frame& diff) {
  return threshold_mask(diff, global_mean(diff));
}

}  // namespace sdet
