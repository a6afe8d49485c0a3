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

#ifndef QFREE_BELLQMA_H
#define QFREE_BELLQMA_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qfree/csp.h"
#include "qfree/quantum.h"
#include "qfree/rational.h"

namespace qfree {

/// Smallest |Z| with |Z| / k >= (1 - eta) / K', compared exactly.
std::size_t uniformity_threshold(std::size_t k, std::size_t answer_dim, const Rational &eta);

class ProtocolParams {
   public:
    ProtocolParams(KcolInstance instance, std::size_t k, Rational eta);

    const KcolInstance &instance() const {
        return inst_;
    }
    std::size_t k() const {
        return k_;
    }
    const Rational &eta() const {
        return eta_;
    }

    /// Alice: one edge question register (dim m) and one answer register (dim K^2) per copy.
    std::size_t alice_question_dim() const {
        return inst_.num_edges();
    }
    std::size_t alice_answer_dim() const {
        return static_cast<std::size_t>(inst_.num_colors()) * inst_.num_colors();
    }
    /// Bob: one vertex question register (dim n) and one answer register (dim K) per copy.
    std::size_t bob_question_dim() const {
        return static_cast<std::size_t>(inst_.num_vertices());
    }
    std::size_t bob_answer_dim() const {
        return static_cast<std::size_t>(inst_.num_colors());
    }
    RegisterLayout alice_layout() const;
    RegisterLayout bob_layout() const;
    std::size_t alice_threshold() const;
    std::size_t bob_threshold() const;

    /// Alice answer index a encodes the color pair (a / K + 1, a % K + 1).
    std::pair<int, int> alice_colors(std::size_t answer) const;
    std::size_t alice_answer(int c1, int c2) const;

   private:
    KcolInstance inst_;
    std::size_t k_;
    Rational eta_;
};

struct WitnessPair {
    StateVector psi1;
    StateVector psi2;
};

/// Throws InputError unless the pair's layouts are the protocol layouts of `params`.
void check_witness_layouts(const WitnessPair &pair, const ProtocolParams &params);

WitnessPair honest_witnesses(const ProtocolParams &params, const Coloring &c);

/// Per-copy honest states, before the k-fold tensor power.
StateVector honest_alice_copy(const ProtocolParams &params, const Coloring &c);
StateVector honest_bob_copy(const ProtocolParams &params, const Coloring &c);

/// Exact acceptance probability of the uniformity test, by enumerating the
/// Fourier-measurement outcomes on the answer registers and then on the
/// question registers indexed by Z.
double uniformity_test_accept_prob(const StateVector &state, std::size_t answer_dim, std::size_t question_dim,
                                   std::size_t k, const Rational &eta);

/// The accepting projector of the uniformity test as a sum of local terms:
/// sum over |Z| >= t_min of (x)_{i in Z} P_Q (x) P_A (x)_{i not in Z} I (x) (I - P_A),
/// where P is the projector onto the uniform superposition.
LocalOperator uniformity_projector(std::size_t question_dim, std::size_t answer_dim, std::size_t k,
                                   std::size_t t_min);

/// True iff the standard-basis outcome passes the consistency check: for every
/// Alice copy (e, a) and Bob copy (v, b) with v in e, the colors agree at v and
/// R(e, colors of a) holds. Digits follow the protocol layouts.
bool consistency_check(const ProtocolParams &params, std::span<const std::size_t> alice_digits,
                       std::span<const std::size_t> bob_digits);

double consistency_test_accept_prob(const WitnessPair &pair, const ProtocolParams &params);

struct ProtocolOutcome {
    double p_unif_1 = 0;
    double p_unif_2 = 0;
    double p_cons = 0;
    double p_accept = 0;
};

/// Fair coin: heads runs the uniformity test on both witnesses and accepts iff
/// both pass; tails runs the consistency test.
ProtocolOutcome protocol_accept_prob(const WitnessPair &pair, const ProtocolParams &params);

/// The same verifier written as a Bell measurement on psi1 (x) psi2.
ProductAcceptOperator protocol_operator(const ProtocolParams &params);

enum class AdversaryKind { kHonest, kBiasedAmplitudes, kCheatingColoring, kEntangledCopies, kCustom };

std::string adversary_name(AdversaryKind kind);
AdversaryKind parse_adversary_kind(const std::string &name);

struct AdversarySpec {
    AdversaryKind kind = AdversaryKind::kHonest;
    /// honest, biased-amplitudes: the coloring the answers follow.
    Coloring coloring;
    /// biased-amplitudes: non-negative question weights per side; empty means uniform.
    /// The amplitude on question q is sqrt(w_q / sum w).
    std::vector<double> alice_weights;
    std::vector<double> bob_weights;
    /// biased-amplitudes: answer registers in the uniform superposition instead of the coloring.
    bool uniform_answers = false;
    /// cheating-coloring: color pair per edge (endpoint order) and a color per vertex.
    std::vector<std::pair<int, int>> edge_colors;
    std::vector<int> vertex_colors;
    /// entangled-copies: sum_j beta_j (honest copy for coloring j)^{(x) k} on each side.
    std::vector<Coloring> copy_colorings;
    std::vector<double> copy_amplitudes;
    /// custom: the states themselves.
    std::optional<WitnessPair> custom;
};

WitnessPair build_witnesses(const AdversarySpec &spec, const ProtocolParams &params);

/// One copy of sum_q alpha_q |q>|answer(q)> with alpha_q = sqrt(w_q / sum w). If
/// `answers` is empty the answer register is the uniform superposition.
StateVector biased_copy_state(std::size_t question_dim, std::size_t answer_dim, std::span<const double> weights,
                              std::span<const std::size_t> answers);

/// Uniformity-test failure probability of the two-question biased family
/// (weights 1 + s, 1 - s, rest 1) with uniform answers, as a function of s.
double biased_family_failure(std::size_t question_dim, std::size_t answer_dim, std::size_t k, const Rational &eta,
                             double s);

/// Bias s in [0, 1] whose failure probability equals `eps` (bisection).
/// Throws InputError if eps exceeds the family's maximal failure probability.
double biased_family_bias_for_failure(std::size_t question_dim, std::size_t answer_dim, std::size_t k,
                                      const Rational &eta, double eps);

/// Weights (1 + s, 1 - s, 1, ..., 1) over `question_dim` questions.
std::vector<double> biased_family_weights(std::size_t question_dim, double s);

struct SampledOutcome {
    ProtocolOutcome estimate;
    ProtocolOutcome std_error;
    std::uint64_t shots = 0;
};

/// Monte-Carlo estimate for witnesses that are k-fold tensor powers of the
/// given per-copy states: every copy is measured independently.
SampledOutcome sample_protocol(const StateVector &alice_copy, const StateVector &bob_copy,
                               const ProtocolParams &params, std::uint64_t shots, std::mt19937_64 &rng);

}  // namespace qfree

#endif
