// Copyright 2026 The qfree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QFREE_COMMON_H
#define QFREE_COMMON_H

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qfree {

/// Malformed or out-of-domain input. The CLI maps this to exit code 2.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A configured enumeration or LP size cap would be exceeded. Exit code 3.
struct CapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An internal invariant failed (norm drift, non-monotone seesaw, ...). Exit code 4.
struct InvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Product of `base` over `count` factors, or throws CapError once it exceeds `cap`.
inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t count, std::uint64_t cap, const char *what) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < count; i++) {
        if (base != 0 && r > cap / base) {
            throw CapError(std::string(what) + ": size exceeds cap " + std::to_string(cap));
        }
        r *= base;
    }
    if (r > cap) {
        throw CapError(std::string(what) + ": size exceeds cap " + std::to_string(cap));
    }
    return r;
}

}  // namespace qfree

#endif
