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

#include "staticdet/mog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <iostream>
#include <istream>
#include <ostream>

namespace sdet {

namespace {

constexpr int kMaxK = 10;
constexpr char kMagic[8] = {'S', 'D', 'M', 'O', 'G', '0', '1', '\n'};

double fitness(const GaussianComponent& c) {
  return c.weight / std::sqrt(c.variance);
}

// Stable sort of one pixel's components by fitness, descending.
void sort_components(std::span<GaussianComponent> comps) {
  std::array<double, kMaxK> fit;
  std::array<int, kMaxK> order;
  const int k = static_cast<int>(comps.size());
  for (int i = 0; i < k; ++i) {
    fit[i] = fitness(comps[i]);
    order[i] = i;
  }
  std::stable_sort(order.begin(), order.begin() + k,
                   [&](int a, int b) { return fit[a] > fit[b]; });
  std::array<GaussianComponent, kMaxK> scratch;
  for (int i = 0; i < k; ++i) scratch[i] = comps[order[i]];
  for (int i = 0; i < k; ++i) comps[i] = scratch[i];
}

template <typename T>
void write_raw(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_raw(std::istream& is, const char* what) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) raise_io("model snapshot truncated while reading ", what);
  return v;
}

}  // namespace

void MogParams::validate() const {
  require(k >= 1 && k <= kMaxK, "component count ", k, " outside [1, ", kMaxK,
          "]");
  require(learning_rate > 0.0 && learning_rate < 1.0, "learning rate ",
          learning_rate, " outside (0, 1)");
  require(match_threshold > 0.0, "match threshold must be positive, got ",
          match_threshold);
  require(background_portion > 0.0 && background_portion < 1.0,
          "background portion ", background_portion, " outside (0, 1)");
  require(initial_variance > 0.0, "initial variance must be positive, got ",
          initial_variance);
  require(variance_floor > 0.0, "variance floor must be positive, got ",
          variance_floor);
  require(initial_variance >= variance_floor, "initial variance ",
          initial_variance, " below the variance floor ", variance_floor);
}

std::optional<int> match_component(std::span<const GaussianComponent> comps,
                                   double x, const MogParams& params) {
  for (int i = 0; i < static_cast<int>(comps.size()); ++i) {
    const GaussianComponent& c = comps[i];
    if (c.weight <= 0.0) continue;
    if (std::fabs(x - c.mean) <= params.match_threshold * std::sqrt(c.variance))
      return i;
  }
  return std::nullopt;
}

BackgroundModel::BackgroundModel(const Frame& first_luma,
                                 const MogParams& params) {
  params.validate();
  if (params.k < 3 || params.k > 5)
    std::cerr << "staticdet: warning: " << params.k
              << " mixture components is outside the recommended range [3, 5]\n";
  first_luma.validate("model seed frame");
  require(first_luma.channels == 1, "model seed must be single-channel, got ",
          first_luma.channels, " channels");
  width_ = first_luma.width;
  height_ = first_luma.height;
  params_ = params;
  comps_.assign(first_luma.pixel_count() * params.k, GaussianComponent{});
  for (std::size_t px = 0; px < first_luma.pixel_count(); ++px) {
    GaussianComponent& lead = comps_[px * params.k];
    lead.weight = 1.0;
    lead.mean = first_luma.data[px];
    lead.variance = params.initial_variance;
    for (int i = 1; i < params.k; ++i)
      comps_[px * params.k + i] = {0.0, 0.0, params.initial_variance};
  }
}

BinaryMask BackgroundModel::update_and_classify(const Frame& luma) {
  luma.validate("model update frame");
  require(luma.channels == 1, "model update expects a single channel, got ",
          luma.channels);
  require(luma.width == width_ && luma.height == height_, "update frame ",
          luma.width, "x", luma.height, " does not match model ", width_, "x",
          height_);
  const int k = params_.k;
  const double alpha = params_.learning_rate;
  BinaryMask mask(width_, height_);
  for (std::size_t px = 0; px < luma.pixel_count(); ++px) {
    std::span<GaussianComponent> comps(&comps_[px * k], static_cast<std::size_t>(k));
    const double x = luma.data[px];

    // Classification against the pre-update state.
    std::optional<int> matched = match_component(comps, x, params_);
    int b = 0;
    double cum = 0.0;
    while (b < k && cum <= params_.background_portion) {
      cum += comps[b].weight;
      ++b;
    }
    mask.data[px] = (!matched || *matched >= b) ? 1 : 0;

    if (matched) {
      for (int i = 0; i < k; ++i) comps[i].weight *= 1.0 - alpha;
      GaussianComponent& c = comps[*matched];
      c.weight += alpha;
      double rho = alpha / c.weight;
      c.mean += rho * (x - c.mean);
      double d = x - c.mean;
      c.variance = (1.0 - rho) * c.variance + rho * d * d;
      if (c.variance < params_.variance_floor) c.variance = params_.variance_floor;
    } else {
      comps[k - 1] = {alpha, x, params_.initial_variance};
      double sum = 0.0;
      for (int i = 0; i < k; ++i) sum += comps[i].weight;
      for (int i = 0; i < k; ++i) comps[i].weight /= sum;
    }
    sort_components(comps);
  }
  return mask;
}

Frame BackgroundModel::background_luma() const {
  Frame out(width_, height_, 1);
  for (std::size_t px = 0; px < out.pixel_count(); ++px)
    out.data[px] = comps_[px * params_.k].mean;
  return out;
}

std::span<const GaussianComponent> BackgroundModel::components(int x,
                                                               int y) const {
  require(x >= 0 && x < width_ && y >= 0 && y < height_, "pixel (", x, ", ", y,
          ") outside the ", width_, "x", height_, " model");
  return {&comps_[(static_cast<std::size_t>(y) * width_ + x) * params_.k],
          static_cast<std::size_t>(params_.k)};
}

void BackgroundModel::save(std::ostream& os) const {
  os.write(kMagic, sizeof(kMagic));
  write_raw(os, static_cast<std::uint32_t>(width_));
  write_raw(os, static_cast<std::uint32_t>(height_));
  write_raw(os, static_cast<std::uint32_t>(params_.k));
  write_raw(os, params_.learning_rate);
  write_raw(os, params_.match_threshold);
  write_raw(os, params_.background_portion);
  write_raw(os, params_.initial_variance);
  write_raw(os, params_.variance_floor);
  for (const GaussianComponent& c : comps_) {
    write_raw(os, c.weight);
    write_raw(os, c.mean);
    write_raw(os, c.variance);
  }
  if (!os) raise_io("failed to write model snapshot");
}

BackgroundModel BackgroundModel::load(std::istream& is) {
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    raise_io("not a model snapshot (bad magic)");
  BackgroundModel m;
  auto w = read_raw<std::uint32_t>(is, "width");
  auto h = read_raw<std::uint32_t>(is, "height");
  auto k = read_raw<std::uint32_t>(is, "component count");
  require(w > 0 && h > 0 && w <= 1u << 20 && h <= 1u << 20,
          "snapshot dimensions ", w, "x", h, " are implausible");
  require(k >= 1 && k <= static_cast<std::uint32_t>(kMaxK),
          "snapshot component count ", k, " outside [1, ", kMaxK, "]");
  m.width_ = static_cast<int>(w);
  m.height_ = static_cast<int>(h);
  m.params_.k = static_cast<int>(k);
  m.params_.learning_rate = read_raw<double>(is, "learning rate");
  m.params_.match_threshold = read_raw<double>(is, "match threshold");
  m.params_.background_portion = read_raw<double>(is, "background portion");
  m.params_.initial_variance = read_raw<double>(is, "initial variance");
  m.params_.variance_floor = read_raw<double>(is, "variance floor");
  m.params_.validate();
  std::size_t n = static_cast<std::size_t>(w) * h * k;
  m.comps_.resize(n);
  for (GaussianComponent& c : m.comps_) {
    c.weight = read_raw<double>(is, "component weight");
    c.mean = read_raw<double>(is, "component mean");
    c.variance = read_raw<double>(is, "component variance");
  }
  return m;
}

}  // namespace sdet
