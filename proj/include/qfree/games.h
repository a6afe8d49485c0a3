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

#ifndef QFREE_GAMES_H
#define QFREE_GAMES_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qfree/bellqma.h"
#include "qfree/csp.h"
#include "qfree/rational.h"

namespace qfree {

enum class QuestionModel { kTuple, kSubset };

std::string model_name(QuestionModel m);
QuestionModel parse_model(const std::string &name);

/// G^{k,l}: Alice gets k edges, Bob gets l vertices.
struct ConsistencyGameSpec {
    KcolInstance instance;
    std::size_t k = 1;
    std::size_t l = 1;
    QuestionModel model = QuestionModel::kTuple;

    void validate() const;
    /// Checks the shape of one question (entries in range; increasing in the subset model).
    void check_alice_question(const std::vector<std::size_t> &q) const;
    void check_bob_question(const std::vector<std::size_t> &q) const;
};

using Question = std::vector<std::size_t>;

/// One prover's question distribution over its positive-probability support.
/// Exact factors carry rational probabilities; real factors only doubles.
class Factor {
   public:
    Factor() = default;
    static Factor exact(const std::map<Question, Rational> &probs);
    static Factor real(const std::map<Question, double> &probs);

    bool is_exact() const {
        return exact_;
    }
    const std::vector<Question> &support() const {
        return support_;
    }
    const std::vector<double> &probs() const {
        return probs_;
    }
    /// Empty unless is_exact().
    const std::vector<Rational> &exact_probs() const {
        return exact_probs_;
    }
    double at(const Question &q) const;
    double total() const;

   private:
    bool exact_ = false;
    std::vector<Question> support_;
    std::vector<double> probs_;
    std::vector<Rational> exact_probs_;
};

/// One term p(T) * uniform on coordinates T (x) junk on the remaining coordinates.
/// `junk` is keyed by the values of the non-T coordinates in increasing coordinate order.
struct MixtureTerm {
    std::vector<std::size_t> uniform_coords;
    Rational weight;
    std::map<Question, Rational> junk;
};

/// Structure sum_T p(T) uniform_T (x) junk_T + error over [alphabet]^k.
struct MixtureAnnotation {
    std::size_t k = 0;
    std::size_t alphabet = 0;
    std::vector<MixtureTerm> terms;
    /// Signed correction term.
    std::map<Question, Rational> error;

    static MixtureAnnotation pure_uniform(std::size_t k, std::size_t alphabet);

    void validate() const;
    std::map<Question, Rational> expand_good() const;
    std::map<Question, Rational> expand() const;
    Rational error_l1() const;
};

struct QuestionDistribution {
    Factor alice;
    Factor bob;
    std::optional<MixtureAnnotation> alice_mixture;
    std::optional<MixtureAnnotation> bob_mixture;
    /// l1 mass removed by restrict_distribution so far.
    double discarded_mass = 0;

    static QuestionDistribution uniform(const ConsistencyGameSpec &spec);
    /// Factors are the expansions of the annotations.
    static QuestionDistribution from_mixtures(MixtureAnnotation alice, MixtureAnnotation bob);

    /// Each factor sums to 1 within 1e-9, questions fit the spec, annotations
    /// reproduce their factors within 1e-9.
    void validate(const ConsistencyGameSpec &spec) const;
};

/// Distinct endpoint vertices of Alice's edges, increasing.
std::vector<int> alice_vertices(const KcolInstance &inst, const Question &edges);
/// Distinct vertices of Bob's question, increasing.
std::vector<int> bob_vertices(const Question &vertices);

/// Win predicate: for every edge e of x and vertex v of y with v in e, the two
/// colorings agree on v and R(e, .) holds on Alice's endpoint colors.
/// Answers list one color per vertex of alice_vertices / bob_vertices.
bool consistency_win(const KcolInstance &inst, const Question &x, const Question &y,
                     const std::vector<int> &alice_colors, const std::vector<int> &bob_colors);

struct DeterministicStrategy {
    std::map<Question, std::vector<int>> alice;
    std::map<Question, std::vector<int>> bob;
};

struct GameValueReport {
    bool exact = false;
    /// Exact value; only meaningful when `exact`.
    Rational value;
    double value_real = 0;
    /// |value_real - true value| bound (0 on the exact path).
    double error_bound = 0;
    DeterministicStrategy witness;
    std::string enumerated_side;
    std::uint64_t strategies_enumerated = 0;
};

inline constexpr std::uint64_t kDefaultStrategyCap = 20'000'000;

/// Classical value of G^{k,l} under a product question distribution. Enumerates
/// the deterministic strategies of the side with fewer of them and lets the
/// other side best-respond; the witness is the lexicographically first optimum.
GameValueReport game_value(const ConsistencyGameSpec &spec, const QuestionDistribution &dist,
                           std::uint64_t cap = kDefaultStrategyCap);

/// Drops the error terms of both annotations and renormalizes. With
/// `drop_error_terms` false the distribution is returned unchanged.
QuestionDistribution restrict_distribution(const QuestionDistribution &dist, bool drop_error_terms = true);

struct SubgameCheck {
    bool holds = false;
    GameValueReport lhs;
    GameValueReport rhs;
};

/// Compares the value of G^{k,l} under a mixture-annotated distribution whose
/// terms all have |T| = k' (Alice) and l' (Bob) against the uniform G^{k',l'}.
SubgameCheck induced_subgame_value_check(const ConsistencyGameSpec &spec, const QuestionDistribution &dist,
                                         std::size_t k_sub, std::size_t l_sub,
                                         std::uint64_t cap = kDefaultStrategyCap);

/// Product of the question-register marginals of psi1 and psi2 (tuple model).
/// Exact when the witnesses have flat amplitudes.
QuestionDistribution measured_question_distribution(const WitnessPair &pair, const ProtocolParams &params);

/// Probability that some sampled edge contains some sampled vertex.
Rational birthday_collision_prob(const KcolInstance &inst, std::size_t k, std::size_t l,
                                 QuestionModel model = QuestionModel::kTuple);

/// A two-player game given by an explicit joint question distribution.
struct TabularGame {
    std::size_t num_x = 0;
    std::size_t num_y = 0;
    std::size_t num_a = 0;
    std::size_t num_b = 0;
    /// prob[x * num_y + y]
    std::vector<Rational> prob;
    std::function<bool(std::size_t x, std::size_t y, std::size_t a, std::size_t b)> win;
};

Rational tabular_classical_value(const TabularGame &game, std::uint64_t cap = kDefaultStrategyCap);

}  // namespace qfree

#endif
