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

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "staticdet/error.hpp"

namespace sdet {

/// Dense raster image. Values are doubles in [0,1], row-major, channels
/// interleaved per pixel (1 channel for luma/masks-as-images, 3 for RGB).
struct Frame {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<double> data;

  Frame() = default;
  Frame(int w, int h, int c, double fill = 0.0);

  std::size_t index(int x, int y, int c = 0) const {
    return (static_cast<std::size_t>(y) * width + x) * channels + c;
  }
  double& at(int x, int y, int c = 0) { return data[index(x, y, c)]; }
  double at(int x, int y, int c = 0) const { return data[index(x, y, c)]; }

  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * height;
  }
  bool same_shape(const Frame& o) const {
    return width == o.width && height == o.height && channels == o.channels;
  }

  /// Checks the structural invariants (positive dims, matching buffer size,
  /// finite values in [0,1]). Throws PreconditionError on violation.
  void validate(const char* what = "frame") const;
};

/// 1-bit mask stored as one byte per pixel (0 = background, 1 = foreground).
struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  BinaryMask() = default;
  BinaryMask(int w, int h, std::uint8_t fill = 0);

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width + x;
  }
  std::uint8_t& at(int x, int y) { return data[index(x, y)]; }
  std::uint8_t at(int x, int y) const { return data[index(x, y)]; }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }
  bool same_shape(const BinaryMask& o) const {
    return width == o.width && height == o.height;
  }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * height;
  }

  /// Number of foreground pixels.
  long long popcount() const;

  void validate(const char* what = "mask") const;

  bool operator==(const BinaryMask& o) const = default;
};

/// 256-bin intensity histogram of a single-channel frame.
struct Histogram {
  std::array<std::uint64_t, 256> bins{};

  std::uint64_t total() const;
};

/// Bins pixel v into floor(v*255); v = 1 lands in bin 255.
/// Pre: f has exactly 1 channel and at least one pixel.
Histogram histogram(const Frame& f);

/// Exact arithmetic mean over all pixels. Pre: 1 channel, non-empty.
double global_mean(const Frame& f);

}  // namespace sdet
