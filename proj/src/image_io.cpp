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

#include "staticdet/image_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "staticdet/error.hpp"

namespace sdet {

namespace {

struct RawPnm {
  int width = 0, height = 0, channels = 0, maxval = 0;
  std::vector<std::uint8_t> samples;
};

long long next_header_int(std::istream& in, const std::filesystem::path& path,
                          const char* what) {
  for (;;) {
    int c = in.peek();
    if (c == '#') {
      std::string comment;
      std::getline(in, comment);
    } else if (c != EOF && std::isspace(static_cast<unsigned char>(c))) {
      in.get();
    } else {
      break;
    }
  }
  long long v = 0;
  if (!(in >> v)) raise_io("cannot parse ", what, " in ", path.string());
  return v;
}

RawPnm load_pnm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise_io("cannot open ", path.string());
  int m0 = in.get();
  int m1 = in.get();
  if (m0 != 'P' || (m1 != '5' && m1 != '6'))
    raise_io("unsupported image format in ", path.string(),
             "; expected binary PGM (P5) or PPM (P6)");
  RawPnm pnm;
  pnm.channels = m1 == '5' ? 1 : 3;
  long long w = next_header_int(in, path, "width");
  long long h = next_header_int(in, path, "height");
  long long maxval = next_header_int(in, path, "maxval");
  if (w < 1 || h < 1 || w > (1 << 20) || h > (1 << 20) || w * h > (1ll << 30))
    raise_io("implausible image dimensions ", w, "x", h, " in ", path.string());
  if (maxval < 1 || maxval > 255)
    raise_io("maxval ", maxval, " in ", path.string(),
             " outside the supported 8-bit range [1, 255]");
  int sep = in.get();
  if (sep == EOF || !std::isspace(static_cast<unsigned char>(sep)))
    raise_io("malformed header in ", path.string(),
             "; expected whitespace after maxval");
  pnm.width = static_cast<int>(w);
  pnm.height = static_cast<int>(h);
  pnm.maxval = static_cast<int>(maxval);
  pnm.samples.resize(static_cast<std::size_t>(w) * h * pnm.channels);
  in.read(reinterpret_cast<char*>(pnm.samples.data()),
          static_cast<std::streamsize>(pnm.samples.size()));
  if (in.gcount() != static_cast<std::streamsize>(pnm.samples.size()))
    raise_io("truncated pixel data in ", path.string(), "; expected ",
             pnm.samples.size(), " bytes, got ", in.gcount());
  return pnm;
}

void write_pnm(const std::filesystem::path& path, int width, int height,
               int channels, const std::vector<std::uint8_t>& samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise_io("cannot create ", path.string());
  out << (channels == 1 ? "P5\n" : "P6\n") << width << ' ' << height
      << "\n255\n";
  out.write(reinterpret_cast<const char*>(samples.data()),
            static_cast<std::streamsize>(samples.size()));
  out.flush();
  if (!out) raise_io("write failed for ", path.string());
}

}  // namespace

Frame load_image(const std::filesystem::path& path) {
  RawPnm pnm = load_pnm(path);
  Frame f(pnm.width, pnm.height, pnm.channels);
  for (std::size_t i = 0; i < pnm.samples.size(); ++i)
    f.data[i] = pnm.samples[i] / static_cast<double>(pnm.maxval);
  return f;
}

void write_image(const std::filesystem::path& path, const Frame& f) {
  f.validate("image");
  std::vector<std::uint8_t> samples(f.data.size());
  for (std::size_t i = 0; i < f.data.size(); ++i)
    samples[i] = static_cast<std::uint8_t>(std::llround(f.data[i] * 255.0));
  write_pnm(path, f.width, f.height, f.channels, samples);
}

void write_mask(const std::filesystem::path& path, const BinaryMask& m) {
  m.validate("mask");
  std::vector<std::uint8_t> samples(m.data.size());
  for (std::size_t i = 0; i < m.data.size(); ++i)
    samples[i] = m.data[i] ? 255 : 0;
  write_pnm(path, m.width, m.height, 1, samples);
}

BinaryMask load_mask(const std::filesystem::path& path) {
  RawPnm pnm = load_pnm(path);
  if (pnm.channels != 1)
    raise_io("mask ", path.string(), " must be single-channel PGM");
  BinaryMask m(pnm.width, pnm.height);
  for (std::size_t i = 0; i < pnm.samples.size(); ++i) {
    if (pnm.samples[i] != 0 && pnm.samples[i] != 255)
      raise_io("mask ", path.string(), " holds sample value ",
               static_cast<int>(pnm.samples[i]), "; only 0 and 255 are valid");
    m.data[i] = pnm.samples[i] ? 1 : 0;
  }
  return m;
}

}  // namespace sdet
