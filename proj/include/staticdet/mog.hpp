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

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "staticdet/frame.hpp"

namespace sdet {

struct GaussianComponent {
  double weight = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

struct MogParams {
  int k = 3;                          // components per pixel, hard range [1,10]
  double learning_rate = 0.01;        // alpha
  double match_threshold = 2.5;       // lambda, in standard deviations
  double background_portion = 0.7;    // T_bg
  double initial_variance = (15.0 / 255.0) * (15.0 / 255.0);
  double variance_floor = (2.0 / 255.0) * (2.0 / 255.0);

  void validate() const;
};

/// Index (in the stored fitness order) of the first component with positive
/// weight satisfying |x - mean| <= lambda * sqrt(variance), or nullopt.
std::optional<int> match_component(std::span<const GaussianComponent> comps,
                                   double x, const MogParams& params);

/// Per-pixel mixture-of-Gaussians background model over a luma sequence.
///
/// Components are kept sorted by fitness weight/sqrt(variance), descending,
/// ties stable. Each update classifies against the pre-update state: with
/// B = the smallest count of leading components whose weights sum above
/// background_portion, a pixel is foreground iff it matches no component or
/// its matched component ranks at B or beyond. The matched component is then
/// updated as
///   w_k   <- (1 - alpha) w_k + alpha [matched] / (1 - alpha) w_k [others]
///   rho   =  alpha / w_matched            (just-updated weight)
///   mu    <- mu + rho (x - mu)
///   sigma2<- (1 - rho) sigma2 + rho (x - mu_new)^2, floored at variance_floor
/// and on no match the lowest-fitness component is replaced with
/// (alpha, x, initial_variance) followed by weight renormalization.
class BackgroundModel {
 public:
  /// Seeds every pixel with one component centered on the first frame's luma
  /// (weight 1, initial_variance); the remaining k-1 components start with
  /// weight 0. k outside [3,5] is accepted with a warning on stderr, outside
  /// [1,10] rejected.
  BackgroundModel(const Frame& first_luma, const MogParams& params);

  /// Classifies every pixel of `luma` against the current state, then folds
  /// the frame into the model. Returns the moving-pixel mask.
  BinaryMask update_and_classify(const Frame& luma);

  /// Mean of the highest-fitness component per pixel.
  Frame background_luma() const;

  std::span<const GaussianComponent> components(int x, int y) const;

  int width() const { return width_; }
  int height() const { return height_; }
  const MogParams& params() const { return params_; }

  /// Binary snapshot: magic "SDMOG01\n", u32 width/height/k, the five double
  /// parameters, then per pixel k components as weight/mean/variance doubles.
  /// Host byte order (little-endian on every supported target).
  void save(std::ostream& os) const;
  static BackgroundModel load(std::istream& is);

 private:
  BackgroundModel() = default;

  int width_ = 0;
  int height_ = 0;
  MogParams params_;
  std::vector<GaussianComponent> comps_;  // k per pixel, fitness-sorted
};

}  // namespace sdet
