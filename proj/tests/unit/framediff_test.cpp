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

#include <random>

#include "doctest.h"
#include "support/oracles.hpp"
#include "staticdet/framediff.hpp"

using namespace sdet;

namespace {

Frame random_luma(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Frame f(w, h, 1);
  for (double& v : f.data) v = dist(rng);
  return f;
}

}  // namespace

TEST_CASE("reference frame can only be set once") {
  ReferenceFrame ref;
  CHECK_FALSE(ref.is_set());
  CHECK_THROWS_AS(ref.luma(), PreconditionError);
  Frame f(4, 4, 1, 0.5);
  ref.set(f);
  CHECK(ref.is_set());
  CHECK_THROWS_AS(ref.set(f), PreconditionError);
}

TEST_CASE("difference against the reference is symmetric and zero on self") {
  Frame a = random_luma(9, 7, 1);
  Frame b = random_luma(9, 7, 2);
  ReferenceFrame ra, rb;
  ra.set(a);
  rb.set(b);
  Frame dab = frame_difference(b, ra);
  Frame dba = frame_difference(a, rb);
  CHECK(dab.data == dba.data);  // |x - y| == |y - x|
  Frame self = frame_difference(a, ra);
  for (double v : self.data) CHECK(v == 0.0);
}

TEST_CASE("rgb frames are converted to luma, single-channel taken as-is") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Frame rgb(6, 5, 3);
  for (double& v : rgb.data) v = dist(rng);
  Frame lum = luma_frame(rgb);

  // Setting the reference from RGB or from its luma is the same thing.
  ReferenceFrame from_rgb, from_luma;
  from_rgb.set(rgb);
  from_luma.set(lum);
  CHECK(from_rgb.luma().data == from_luma.luma().data);

  // Current frames follow the same rule, so a frame never differs from its
  // own luma rendition.
  Frame d_rgb = frame_difference(rgb, from_luma);
  for (double v : d_rgb.data) CHECK(v == 0.0);
}

TEST_CASE("mean threshold worked example: a tenth of the pixels at 0.8") {
  Frame diff(10, 10, 1, 0.0);
  for (int j = 0; j < 10; ++j) diff.at(j, 0) = 0.8;
  CHECK(global_mean(diff) == doctest::Approx(0.08).epsilon(1e-12));
  BinaryMask mask = threshold_mask(diff);
  CHECK(mask.popcount() == 10);
  for (int j = 0; j < 10; ++j) CHECK(mask.at(j, 0) == 1);
}

TEST_CASE("threshold is strict so constant differences give empty masks") {
  Frame diff(8, 6, 1, 0.3);
  CHECK(threshold_mask(diff).popcount() == 0);
  Frame zero(8, 6, 1, 0.0);
  CHECK(threshold_mask(zero).popcount() == 0);
  CHECK(threshold_mask(zero, 0.0).popcount() == 0);
  // The pixel equal to the explicit threshold stays background.
  Frame f(3, 1, 1);
  f.data = {0.2, 0.5, 0.8};
  BinaryMask m = threshold_mask(f, 0.5);
  CHECK(m.data == std::vector<std::uint8_t>{0, 0, 1});
}

TEST_CASE("mean threshold is invariant to exact rescaling") {
  Frame diff = random_luma(16, 16, 5);
  BinaryMask base = threshold_mask(diff);
  for (double scale : {0.5, 0.25, 0.125}) {  // powers of two rescale exactly
    Frame scaled = diff;
    for (double& v : scaled.data) v *= scale;
    CHECK(threshold_mask(scaled) == base);
  }
}

TEST_CASE("mean threshold matches the raster-order reference") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    int w = 4 + static_cast<int>(rng() % 29);
    int h = 4 + static_cast<int>(rng() % 29);
    Frame diff = random_luma(w, h, rng());
    CHECK(threshold_mask(diff) == oracle::naive_mean_threshold(diff));
  }
}

TEST_CASE("dimension mismatches are rejected") {
  ReferenceFrame ref;
  ref.set(Frame(8, 8, 1, 0.1));
  Frame other(7, 8, 1, 0.1);
  CHECK_THROWS_AS(frame_difference(other, ref), PreconditionError);
  Frame rgb(4, 4, 3, 0.5);
  CHECK_THROWS_AS(threshold_mask(rgb, 0.1), PreconditionError);
}
