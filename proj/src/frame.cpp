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

#include "staticdet/frame.hpp"

#include <algorithm>
#include <cmath>

namespace sdet {

Frame::Frame(int w, int h, int c, double fill) : width(w), height(h), channels(c) {
  require(w > 0 && h > 0, "frame dimensions must be positive, got ", w, "x", h);
  require(c == 1 || c == 3, "frame must have 1 or 3 channels, got ", c);
  data.assign(static_cast<std::size_t>(w) * h * c, fill);
}

void Frame::validate(const char* what) const {
  require(width > 0 && height > 0, what, ": dimensions must be positive, got ",
          width, "x", height);
  require(channels == 1 || channels == 3, what, ": expected 1 or 3 channels, got ",
          channels);
  require(data.size() == static_cast<std::size_t>(width) * height * channels, what,
          ": buffer holds ", data.size(), " values, dimensions imply ",
          static_cast<std::size_t>(width) * height * channels);
  for (std::size_t i = 0; i < data.size(); ++i) {
    double v = data[i];
    require(std::isfinite(v) && v >= 0.0 && v <= 1.0, what, ": value ", v,
            " at flat index ", i, " outside [0, 1]");
  }
}

BinaryMask::BinaryMask(int w, int h, std::uint8_t fill) : width(w), height(h) {
  require(w > 0 && h > 0, "mask dimensions must be positive, got ", w, "x", h);
  require(fill == 0 || fill == 1, "mask fill must be 0 or 1, got ", int(fill));
  data.assign(static_cast<std::size_t>(w) * h, fill);
}

long long BinaryMask::popcount() const {
  long long n = 0;
  for (std::uint8_t v : data) n += v;
  return n;
}

void BinaryMask::validate(const char* what) const {
  require(width > 0 && height > 0, what, ": dimensions must be positive, got ",
          width, "x", height);
  require(data.size() == static_cast<std::size_t>(width) * height, what,
          ": buffer holds ", data.size(), " values, dimensions imply ",
          static_cast<std::size_t>(width) * height);
  for (std::size_t i = 0; i < data.size(); ++i)
    require(data[i] == 0 || data[i] == 1, what, ": value ", int(data[i]),
            " at flat index ", i, " is not 0/1");
}

std::uint64_t Histogram::total() const {
  std::uint64_t n = 0;
  for (std::uint64_t b : bins) n += b;
  return n;
}

Histogram histogram(const Frame& f) {
  require(f.channels == 1, "histogram expects a single-channel frame, got ",
          f.channels, " channels");
  require(!f.data.empty(), "histogram of an empty frame is undefined");
  Histogram h;
  for (double v : f.data) {
    int b = static_cast<int>(std::floor(v * 255.0));
    b = std::clamp(b, 0, 255);
    ++h.bins[b];
  }
  return h;
}

double global_mean(const Frame& f) {
  require(f.channels == 1, "global_mean expects a single-channel frame, got ",
          f.channels, " channels");
  require(!f.data.empty(), "global_mean of an empty frame is undefined");
  double sum = 0.0;
  for (double v : f.data) sum += v;
  return sum / static_cast<double>(f.data.size());
}

}  // namespace sdet
