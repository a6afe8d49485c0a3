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

#ifndef QFREE_TOOLS_CLI_H
#define QFREE_TOOLS_CLI_H

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qfree/rational.h"

namespace qfree::cli {

/// Runs one command line (without the program name). Returns the exit code:
/// 0 success, 2 input error, 3 resource cap, 4 invariant violation.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Shortest round-trip decimal, independent of the locale.
std::string format_double(double x);

std::string sha256_hex(std::span<const std::uint8_t> bytes);

/// Recomputes the digests listed in a manifest. Throws InputError on mismatch.
void verify_manifest(const std::filesystem::path &manifest);

struct TrendPoint {
    double eps = 0;
    double bias = 0;
    double failure = 0;
    double distance = 0;
};

/// One point of the biased-amplitude trend: picks the bias whose uniformity
/// failure is eps, measures the question registers of the k-fold state, and
/// returns the distance of that distribution to the mixture family.
TrendPoint trend_point(std::size_t question_dim, std::size_t answer_dim, std::size_t k, const Rational &eta,
                       double eps, std::uint64_t cap_lp);

}  // namespace qfree::cli

#endif
