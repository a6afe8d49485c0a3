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

#ifndef QFREE_ANALYSIS_H
#define QFREE_ANALYSIS_H

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qfree/quantum.h"
#include "qfree/rational.h"

namespace qfree {

/// sum_T p(T) uniform_T (x) junk_T over [Q]^k; junk keyed by the values of the
/// non-T coordinates in increasing coordinate order.
struct MixtureDecomposition {
    struct Term {
        std::vector<std::size_t> uniform_coords;
        double weight = 0;
        std::map<Outcome, double> junk;
    };
    std::size_t k = 0;
    std::size_t alphabet = 0;
    std::vector<Term> terms;
    double distance = 0;

    /// The mixture as a distribution over [Q]^k.
    std::map<Outcome, double> expand() const;
};

enum class LpArithmetic { kAuto, kExact, kDouble };

inline constexpr std::uint64_t kDefaultLpCap = 2'000'000;

struct TvResult {
    double distance = 0;
    /// Set when the LP was solved over the rationals.
    std::optional<Rational> exact_distance;
    MixtureDecomposition decomposition;
    std::size_t lp_rows = 0;
    std::size_t lp_cols = 0;
};

/// Minimum total-variation distance from mu to the mixtures with every |T| >= t_min,
/// as a linear program. `cap` bounds Q^k * sum_T Q^(k - |T|).
TvResult tv_to_mixture_family(const std::map<Outcome, double> &mu, std::size_t alphabet, std::size_t k,
                              std::size_t t_min, std::uint64_t cap = kDefaultLpCap,
                              LpArithmetic arithmetic = LpArithmetic::kAuto);

/// Rational input; solved exactly unless `arithmetic` is kDouble.
TvResult tv_to_mixture_family_exact(const std::map<Outcome, Rational> &mu, std::size_t alphabet, std::size_t k,
                                    std::size_t t_min, std::uint64_t cap = kDefaultLpCap,
                                    LpArithmetic arithmetic = LpArithmetic::kAuto);

struct SepOptions {
    std::size_t restarts = 32;
    std::size_t max_iters = 1000;
    double tol = 1e-13;
    std::uint64_t seed = 0;
};

struct SepResult {
    double value = 0;
    std::vector<cplx> a;
    std::vector<cplx> b;
    std::size_t iterations = 0;
    bool converged = false;
    std::size_t best_restart = 0;
    /// Objective after every half-step of the best restart.
    std::vector<double> trace;
};

/// <a|<b| M |a>|b>
double product_value(const Matrix &m, std::span<const cplx> a, std::span<const cplx> b);

double max_eigenvalue(const Matrix &m);

/// Alternating maximization of <a|<b| M |a>|b> over unit vectors; a lower bound
/// on h_Sep(M). Throws InputError if M is not Hermitian or dims do not match, and
/// InvariantError if the objective ever decreases.
SepResult hsep_seesaw(const Matrix &m, std::size_t dim_a, std::size_t dim_b, const SepOptions &opts = {});

SepResult hsep_seesaw(const ProductAcceptOperator &op, const SepOptions &opts = {});

}  // namespace qfree

#endif
