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

#include "staticdet/frame.hpp"

namespace sdet {

/// Reads a binary PGM (P5, one channel) or PPM (P6, three channels) with
/// maxval <= 255; values are scaled to [0, 1].
Frame load_image(const std::filesystem::path& path);

/// Writes PGM for single-channel frames, PPM for RGB; values quantized with
/// round(v * 255), maxval 255.
void write_image(const std::filesystem::path& path, const Frame& f);

/// Mask as an 8-bit PGM using 0/255 only.
void write_mask(const std::filesystem::path& path, const BinaryMask& m);

/// Reads a 0/255 PGM back into a mask; any other sample value is rejected.
BinaryMask load_mask(const std::filesystem::path& path);

}  // namespace sdet
