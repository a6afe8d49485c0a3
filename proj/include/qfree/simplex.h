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

#ifndef QFREE_SIMPLEX_H
#define QFREE_SIMPLEX_H

#include <cstddef>
#include <vector>

#include "qfree/rational.h"

namespace qfree::lp {

enum class Status { kOptimal, kInfeasible, kUnbounded };

template <class T>
struct Result {
    Status status = Status::kInfeasible;
    T objective{};
    std::vector<T> x;
    std::size_t pivots = 0;
};

/// minimize c.x subject to A x = b, x >= 0. Two-phase dense tableau simplex
/// with Bland's rule. `A` is row-major with one entry per column in each row.
Result<Rational> solve_exact(const std::vector<std::vector<Rational>> &a, const std::vector<Rational> &b,
                             const std::vector<Rational> &c);

/// Same in double precision; values within `tol` of zero are treated as zero.
Result<double> solve_double(const std::vector<std::vector<double>> &a, const std::vector<double> &b,
                            const std::vector<double> &c, double tol = 1e-9);

}  // namespace qfree::lp

#endif
