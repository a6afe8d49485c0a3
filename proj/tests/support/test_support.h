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

#ifndef QFREE_TESTS_SUPPORT_H
#define QFREE_TESTS_SUPPORT_H

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qfree/csp.h"
#include "qfree/games.h"
#include "qfree/quantum.h"
#include "qfree/rational.h"

namespace qfree::testing {

std::string data_path(const std::string &name);

/// A pure state on (Q, K')^k that passes the uniformity test with certainty:
/// a superposition over sets T (|T| >= t_min) of the uniform superposition on the
/// T questions and answers, a random junk state on the other questions, and
/// answers F^dagger|r> with r != 0 there.
struct CertaintyPassingState {
    StateVector state;
    std::vector<std::vector<std::size_t>> sets;
};
CertaintyPassingState random_certainty_passing_state(std::mt19937_64 &rng, std::size_t question_dim,
                                                     std::size_t answer_dim, std::size_t k, std::size_t t_min);

/// sum_{z >= t} C(k, z) p^z (1 - p)^(k - z) with p = 1 / K', by Pascal's triangle.
double binomial_tail(std::size_t k, std::size_t answer_dim, std::size_t t);

/// Tries every assignment.
bool brute_force_satisfiable(const SatInstance &sat);

/// Value of G^{k,l} by enumerating the strategies of both provers.
Rational brute_force_game_value(const ConsistencyGameSpec &spec, const QuestionDistribution &dist);

/// Random graph on n vertices with up to m distinct edges and a random
/// non-empty relation per edge.
KcolInstance random_instance(std::mt19937_64 &rng, int n, std::size_t m, int num_colors);

/// Random rational in (0, 1] with a small denominator.
Rational random_weight(std::mt19937_64 &rng);

/// Random annotation over [alphabet]^k whose terms all have |T| = k_sub, with
/// junk supported on at most `junk_atoms` points.
MixtureAnnotation random_mixture(std::mt19937_64 &rng, std::size_t k, std::size_t alphabet, std::size_t k_sub,
                                 std::size_t junk_atoms);

std::vector<cplx> random_vector(std::mt19937_64 &rng, std::size_t n);

}  // namespace qfree::testing

#endif
