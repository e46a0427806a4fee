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

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace sdet {

/// Thrown whenever a caller violates a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Thrown for runtime failures outside the caller's control (I/O, corrupt files).
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

template <typename... Parts>
std::string concat(Parts&&... parts) {
  std::ostringstream oss;
  (oss << ... << std::forward<Parts>(parts));
  return oss.str();
}

}  // namespace detail

template <typename... Parts>
[[noreturn]] void raise(Parts&&... parts) {
  throw PreconditionError(detail::concat(std::forward<Parts>(parts)...));
}

template <typename... Parts>
[[noreturn]] void raise_io(Parts&&... parts) {
  throw IoError(detail::concat(std::forward<Parts>(parts)...));
}

/// Precondition check; message parts are streamed only on failure.
template <typename... Parts>
void require(bool condition, Parts&&... parts) {
  if (!condition) raise(std::forward<Parts>(parts)...);
}

}  // namespace sdet
