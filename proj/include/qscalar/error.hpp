// Copyright 2026 The qscalar Authors.
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

#include <stdexcept>
#include <string>

namespace qscalar {

/// Raised for every contract violation in the library (bad indices, invalid
/// parameters, impossible postselection, malformed configuration).
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string &what) : std::runtime_error(what) {}
};

namespace detail {

[[noreturn]] inline void fail(const std::string &message) { throw Error(message); }

inline void require(bool condition, const std::string &message) {
    if (!condition) {
        fail(message);
    }
}

constexpr bool is_power_of_two(std::size_t value) noexcept {
    return value != 0 && (value & (value - 1)) == 0;
}

constexpr int log2_exact(std::size_t value) noexcept {
    int n = 0;
    while ((std::size_t{1} << n) < value) {
        ++n;
    }
    return n;
}

} // namespace detail
} // namespace qscalar
