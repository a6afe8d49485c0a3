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

#ifndef QFREE_RATIONAL_H
#define QFREE_RATIONAL_H

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace qfree {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double x);

/// Exact value of a decimal literal such as "0.3", "-1.25e-2" or "3/10".
Rational rational_from_decimal(const std::string &text);

/// "num/den" in lowest terms ("3/4", "1", "0").
std::string to_string(const Rational &q);

double to_double(const Rational &q);

/// Binomial coefficient as an exact integer.
BigInt binomial(unsigned n, unsigned k);

/// Smallest integer z >= 0 with z * scale >= frac * count, where frac is exact.
/// This is the ceiling of (frac * count / scale) computed without rounding.
std::uint64_t ceil_ratio(const Rational &frac, std::uint64_t count, std::uint64_t scale);

}  // namespace qfree

#endif
