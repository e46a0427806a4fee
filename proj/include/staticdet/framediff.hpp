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

#include <optional>

#include "staticdet/color.hpp"
#include "staticdet/frame.hpp"

namespace sdet {

/// Holds the luma of the sequence's background reference. Set exactly once;
/// a second set is rejected so a mid-run reference swap cannot silently
/// invalidate every subsequent difference image.
class ReferenceFrame {
 public:
  /// Stores the luma of `f`: RGB frames are converted, single-channel frames
  /// are taken as luma already. Throws if a reference is already set.
  void set(const Frame& f);

  bool is_set() const { return luma_.has_value(); }

  /// Throws if no reference has been set.
  const Frame& luma() const;

 private:
  std::optional<Frame> luma_;
};

/// Per-pixel |L(current) - L(reference)|. `current` may be RGB or already a
/// luma frame; dimensions must match the reference.
Frame frame_difference(const Frame& current, const ReferenceFrame& ref);

/// Foreground where the pixel is strictly greater than `threshold`.
BinaryMask threshold_mask(const Frame& diff, double threshold);

/// Threshold at the exact arithmetic mean of the difference image; a
/// constant image (mean = every pixel) therefore yields an empty mask.
BinaryMask threshold_mask(const Frame& diff);

}  // namespace sdet
