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

#include "qfree/bellqma.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qfree/common.h"
#include "qfree/kernels.h"

namespace qfree {

std::size_t uniformity_threshold(std::size_t k, std::size_t answer_dim, const Rational &eta) {
    if (answer_dim == 0) {
        throw InputError("answer dimension must be positive");
    }
    return static_cast<std::size_t>(ceil_ratio(Rational(1) - eta, k, answer_dim));
}

ProtocolParams::ProtocolParams(KcolInstance instance, std::size_t k, Rational eta)
    : inst_(std::move(instance)), k_(k), eta_(std::move(eta)) {
    eta_.canonicalize();
    if (k_ == 0) {
        throw InputError("k must be at least 1");
    }
    if (k_ > 63) {
        throw InputError("k must be at most 63");
    }
    if (eta_ <= 0 || eta_ >= 1) {
        throw InputError("eta must lie strictly between 0 and 1");
    }
    if (inst_.num_edges() == 0) {
        throw InputError("the protocol needs at least one edge");
    }
    if (inst_.num_vertices() == 0) {
        throw InputError("the protocol needs at least one vertex");
    }
}

RegisterLayout ProtocolParams::alice_layout() const {
    return RegisterLayout::protocol(alice_question_dim(), alice_answer_dim(), k_);
}

RegisterLayout ProtocolParams::bob_layout() const {
    return RegisterLayout::protocol(bob_question_dim(), bob_answer_dim(), k_);
}

std::size_t ProtocolParams::alice_threshold() const {
    return uniformity_threshold(k_, alice_answer_dim(), eta_);
}

std::size_t ProtocolParams::bob_threshold() const {
    return uniformity_threshold(k_, bob_answer_dim(), eta_);
}

std::pair<int, int> ProtocolParams::alice_colors(std::size_t answer) const {
    const std::size_t kk = static_cast<std::size_t>(inst_.num_colors());
    return {static_cast<int>(answer / kk) + 1, static_cast<int>(answer % kk) + 1};
}

std::size_t ProtocolParams::alice_answer(int c1, int c2) const {
    const int kk = inst_.num_colors();
    if (c1 < 1 || c1 > kk || c2 < 1 || c2 > kk) {
        throw InputError("color out of range");
    }
    return static_cast<std::size_t>((c1 - 1) * kk + (c2 - 1));
}

namespace {

bool same_shape(const RegisterLayout &a, const RegisterLayout &b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); i++) {
        if (a[i].dim != b[i].dim) {
            return false;
        }
    }
    return true;
}

void check_coloring(const ProtocolParams &params, const Coloring &c) {
    const auto &inst = params.instance();
    if (c.colors.size() != static_cast<std::size_t>(inst.num_vertices())) {
        throw InputError("coloring must assign every vertex");
    }
    for (int col : c.colors) {
        if (col < 1 || col > inst.num_colors()) {
            throw InputError("coloring uses a color outside [K]");
        }
    }
}

std::vector<double> probabilities(const StateVector &s) {
    std::vector<double> p(s.dim());
    kernels::active().abs2(s.amplitudes().data(), p.data(), p.size());
    return p;
}

LocalOperator complement(const LocalOperator &op) {
    LocalOperator r = LocalOperator::identity(op.layout());
    for (const auto &t : op.terms()) {
        r.add_term(-t.coeff, t.factors);
    }
    return r;
}

}  // namespace

void check_witness_layouts(const WitnessPair &pair, const ProtocolParams &params) {
    if (!same_shape(pair.psi1.layout(), params.alice_layout())) {
        throw InputError("psi1 layout does not match (m, K^2)^k");
    }
    if (!same_shape(pair.psi2.layout(), params.bob_layout())) {
        throw InputError("psi2 layout does not match (n, K)^k");
    }
}

StateVector honest_alice_copy(const ProtocolParams &params, const Coloring &c) {
    check_coloring(params, c);
    const auto &inst = params.instance();
    std::vector<std::size_t> answers;
    for (const Edge &e : inst.edges()) {
        answers.push_back(params.alice_answer(c.colors[e.u], c.colors[e.v]));
    }
    std::vector<double> w(inst.num_edges(), 1.0);
    return biased_copy_state(params.alice_question_dim(), params.alice_answer_dim(), w, answers);
}

StateVector honest_bob_copy(const ProtocolParams &params, const Coloring &c) {
    check_coloring(params, c);
    std::vector<std::size_t> answers;
    for (int col : c.colors) {
        answers.push_back(static_cast<std::size_t>(col - 1));
    }
    std::vector<double> w(params.bob_question_dim(), 1.0);
    return biased_copy_state(params.bob_question_dim(), params.bob_answer_dim(), w, answers);
}

WitnessPair honest_witnesses(const ProtocolParams &params, const Coloring &c) {
    return {tensor_power(honest_alice_copy(params, c), params.k()),
            tensor_power(honest_bob_copy(params, c), params.k())};
}

double uniformity_test_accept_prob(const StateVector &state, std::size_t answer_dim, std::size_t question_dim,
                                   std::size_t k, const Rational &eta) {
    const RegisterLayout &layout = state.layout();
    if (!same_shape(layout, RegisterLayout::protocol(question_dim, answer_dim, k))) {
        throw InputError("state layout is not (Q, K')^k for the requested Q, K', k");
    }
    const std::size_t t_min = uniformity_threshold(k, answer_dim, eta);
    const Matrix fa = qft_matrix(answer_dim);
    const Matrix fq = qft_matrix(question_dim);

    std::vector<cplx> cur(state.amplitudes().begin(), state.amplitudes().end());
    std::vector<cplx> tmp(cur.size());
    for (std::size_t i = 0; i < k; i++) {
        apply_matrix_to_register(layout, 2 * i + 1, fa, cur, tmp);
        cur.swap(tmp);
    }
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < k; i++) {
        order.push_back(2 * i + 1);
    }
    for (std::size_t i = 0; i < k; i++) {
        order.push_back(2 * i);
    }
    const std::vector<cplx> perm = permute_registers(layout, cur, order);

    const RegisterLayout answers = RegisterLayout::plain(std::vector<std::size_t>(k, answer_dim));
    const RegisterLayout questions = RegisterLayout::plain(std::vector<std::size_t>(k, question_dim));
    const std::size_t block = questions.total_dim();
    const auto &kern = kernels::active();
    std::vector<cplx> v(block);
    std::vector<cplx> w(block);
    std::vector<double> probs(block);
    double accept = 0;
    for (std::size_t r = 0; r < answers.total_dim(); r++) {
        std::vector<std::size_t> zeros;
        for (std::size_t i = 0; i < k; i++) {
            if (answers.digit(r, i) == 0) {
                zeros.push_back(i);
            }
        }
        if (zeros.size() < t_min) {
            continue;
        }
        std::copy(perm.begin() + r * block, perm.begin() + (r + 1) * block, v.begin());
        if (kern.norm2(v.data(), v.size()) == 0) {
            continue;
        }
        for (std::size_t i : zeros) {
            apply_matrix_to_register(questions, i, fq, v, w);
            v.swap(w);
        }
        kern.abs2(v.data(), probs.data(), block);
        for (std::size_t j = 0; j < block; j++) {
            bool all_zero = true;
            for (std::size_t i : zeros) {
                if (questions.digit(j, i) != 0) {
                    all_zero = false;
                    break;
                }
            }
            if (all_zero) {
                accept += probs[j];
            }
        }
    }
    return std::clamp(accept, 0.0, 1.0);
}

LocalOperator uniformity_projector(std::size_t question_dim, std::size_t answer_dim, std::size_t k,
                                   std::size_t t_min) {
    if (k > 63) {
        throw InputError("k must be at most 63");
    }
    const RegisterLayout layout = RegisterLayout::protocol(question_dim, answer_dim, k);
    const std::vector<cplx> uq(question_dim, cplx(1.0 / std::sqrt(static_cast<double>(question_dim)), 0.0));
    const std::vector<cplx> ua(answer_dim, cplx(1.0 / std::sqrt(static_cast<double>(answer_dim)), 0.0));
    auto pq = std::make_shared<const Matrix>(Matrix::outer(uq));
    auto pa = std::make_shared<const Matrix>(Matrix::outer(ua));
    auto not_pa = std::make_shared<const Matrix>(Matrix::identity(answer_dim) - *pa);
    LocalOperator op(layout);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); mask++) {
        if (static_cast<std::size_t>(std::popcount(mask)) < t_min) {
            continue;
        }
        std::vector<std::shared_ptr<const Matrix>> f(2 * k);
        for (std::size_t i = 0; i < k; i++) {
            if ((mask >> i) & 1) {
                f[2 * i] = pq;
                f[2 * i + 1] = pa;
            } else {
                f[2 * i + 1] = not_pa;
            }
        }
        op.add_term(1.0, std::move(f));
    }
    return op;
}

bool consistency_check(const ProtocolParams &params, std::span<const std::size_t> alice_digits,
                       std::span<const std::size_t> bob_digits) {
    const auto &inst = params.instance();
    const std::size_t k = params.k();
    for (std::size_t i = 0; i < k; i++) {
        const Edge &e = inst.edge(alice_digits[2 * i]);
        const auto [c1, c2] = params.alice_colors(alice_digits[2 * i + 1]);
        for (std::size_t j = 0; j < k; j++) {
            const int v = static_cast<int>(bob_digits[2 * j]);
            if (!e.contains(v)) {
                continue;
            }
            const int b = static_cast<int>(bob_digits[2 * j + 1]) + 1;
            if ((v == e.u ? c1 : c2) != b) {
                return false;
            }
            if (!inst.allowed(alice_digits[2 * i], c1, c2)) {
                return false;
            }
        }
    }
    return true;
}

double consistency_test_accept_prob(const WitnessPair &pair, const ProtocolParams &params) {
    check_witness_layouts(pair, params);
    struct Atom {
        double p;
        std::vector<std::size_t> digits;
    };
    auto support = [](const StateVector &s) {
        const auto p = probabilities(s);
        std::vector<Atom> atoms;
        for (std::size_t i = 0; i < p.size(); i++) {
            if (p[i] > 0) {
                atoms.push_back({p[i], s.layout().decode(i)});
            }
        }
        return atoms;
    };
    const auto a = support(pair.psi1);
    const auto b = support(pair.psi2);
    double accept = 0;
    for (const auto &x : a) {
        double inner = 0;
        for (const auto &y : b) {
            if (consistency_check(params, x.digits, y.digits)) {
                inner += y.p;
            }
        }
        accept += x.p * inner;
    }
    return std::clamp(accept, 0.0, 1.0);
}

ProtocolOutcome protocol_accept_prob(const WitnessPair &pair, const ProtocolParams &params) {
    check_witness_layouts(pair, params);
    ProtocolOutcome r;
    r.p_unif_1 = uniformity_test_accept_prob(pair.psi1, params.alice_answer_dim(), params.alice_question_dim(),
                                             params.k(), params.eta());
    r.p_unif_2 = uniformity_test_accept_prob(pair.psi2, params.bob_answer_dim(), params.bob_question_dim(),
                                             params.k(), params.eta());
    r.p_cons = consistency_test_accept_prob(pair, params);
    r.p_accept = 0.5 * r.p_unif_1 * r.p_unif_2 + 0.5 * r.p_cons;
    return r;
}

ProductAcceptOperator protocol_operator(const ProtocolParams &params) {
    const RegisterLayout la = params.alice_layout();
    const RegisterLayout lb = params.bob_layout();
    const LocalOperator pi_a =
        uniformity_projector(params.alice_question_dim(), params.alice_answer_dim(), params.k(),
                             params.alice_threshold());
    const LocalOperator pi_b =
        uniformity_projector(params.bob_question_dim(), params.bob_answer_dim(), params.k(), params.bob_threshold());

    ProductAcceptOperator op;
    ProductAcceptOperator::Term heads;
    heads.weight = 0.5;
    heads.alice = PovmSide{la, false, {pi_a, complement(pi_a)}};
    heads.bob = PovmSide{lb, false, {pi_b, complement(pi_b)}};
    heads.accept = [](std::size_t a, std::size_t b) { return a == 0 && b == 0; };
    op.terms.push_back(std::move(heads));

    ProductAcceptOperator::Term tails;
    tails.weight = 0.5;
    tails.alice = PovmSide{la, true, {}};
    tails.bob = PovmSide{lb, true, {}};
    tails.accept = [params, la, lb](std::size_t a, std::size_t b) {
        return consistency_check(params, la.decode(a), lb.decode(b));
    };
    op.terms.push_back(std::move(tails));
    return op;
}

std::string adversary_name(AdversaryKind kind) {
    switch (kind) {
        case AdversaryKind::kHonest:
            return "honest";
        case AdversaryKind::kBiasedAmplitudes:
            return "biased-amplitudes";
        case AdversaryKind::kCheatingColoring:
            return "cheating-coloring";
        case AdversaryKind::kEntangledCopies:
            return "entangled-copies";
        case AdversaryKind::kCustom:
            return "custom";
    }
    return "unknown";
}

AdversaryKind parse_adversary_kind(const std::string &name) {
    for (AdversaryKind k : {AdversaryKind::kHonest, AdversaryKind::kBiasedAmplitudes,
                            AdversaryKind::kCheatingColoring, AdversaryKind::kEntangledCopies,
                            AdversaryKind::kCustom}) {
        if (adversary_name(k) == name) {
            return k;
        }
    }
    throw InputError("unknown adversary kind '" + name + "'");
}

StateVector biased_copy_state(std::size_t question_dim, std::size_t answer_dim, std::span<const double> weights,
                              std::span<const std::size_t> answers) {
    if (weights.size() != question_dim) {
        throw InputError("expected " + std::to_string(question_dim) + " question weights, got " +
                         std::to_string(weights.size()));
    }
    if (!answers.empty() && answers.size() != question_dim) {
        throw InputError("expected one answer per question");
    }
    double total = 0;
    for (double w : weights) {
        if (!(w >= 0) || !std::isfinite(w)) {
            throw InputError("question weights must be finite and non-negative");
        }
        total += w;
    }
    if (!(total > 0)) {
        throw InputError("question weights are not normalizable");
    }
    const RegisterLayout layout = RegisterLayout::protocol(question_dim, answer_dim, 1);
    std::vector<cplx> amps(layout.total_dim());
    const double flat = 1.0 / std::sqrt(static_cast<double>(answer_dim));
    for (std::size_t q = 0; q < question_dim; q++) {
        const double alpha = std::sqrt(weights[q] / total);
        if (answers.empty()) {
            for (std::size_t a = 0; a < answer_dim; a++) {
                amps[q * answer_dim + a] = alpha * flat;
            }
        } else {
            if (answers[q] >= answer_dim) {
                throw InputError("answer out of range");
            }
            amps[q * answer_dim + answers[q]] = alpha;
        }
    }
    return StateVector::normalized(layout, std::move(amps));
}

namespace {

StateVector side_superposition(const std::vector<StateVector> &copies, const std::vector<double> &beta,
                               std::size_t k) {
    std::vector<cplx> amps;
    RegisterLayout layout;
    for (std::size_t j = 0; j < copies.size(); j++) {
        const StateVector p = tensor_power(copies[j], k);
        if (amps.empty()) {
            amps.assign(p.dim(), cplx{});
            layout = p.layout();
        }
        kernels::active().axpy(beta[j], p.amplitudes().data(), amps.data(), amps.size());
    }
    return StateVector::normalized(layout, std::move(amps));
}

}  // namespace

WitnessPair build_witnesses(const AdversarySpec &spec, const ProtocolParams &params) {
    const auto &inst = params.instance();
    switch (spec.kind) {
        case AdversaryKind::kHonest:
            return honest_witnesses(params, spec.coloring);
        case AdversaryKind::kBiasedAmplitudes: {
            check_coloring(params, spec.coloring);
            std::vector<double> wa = spec.alice_weights;
            std::vector<double> wb = spec.bob_weights;
            if (wa.empty()) {
                wa.assign(params.alice_question_dim(), 1.0);
            }
            if (wb.empty()) {
                wb.assign(params.bob_question_dim(), 1.0);
            }
            std::vector<std::size_t> aa;
            std::vector<std::size_t> ab;
            if (!spec.uniform_answers) {
                for (const Edge &e : inst.edges()) {
                    aa.push_back(params.alice_answer(spec.coloring.colors[e.u], spec.coloring.colors[e.v]));
                }
                for (int c : spec.coloring.colors) {
                    ab.push_back(static_cast<std::size_t>(c - 1));
                }
            }
            return {tensor_power(biased_copy_state(params.alice_question_dim(), params.alice_answer_dim(), wa, aa),
                                 params.k()),
                    tensor_power(biased_copy_state(params.bob_question_dim(), params.bob_answer_dim(), wb, ab),
                                 params.k())};
        }
        case AdversaryKind::kCheatingColoring: {
            if (spec.edge_colors.size() != inst.num_edges() ||
                spec.vertex_colors.size() != static_cast<std::size_t>(inst.num_vertices())) {
                throw InputError("cheating coloring needs one color pair per edge and one color per vertex");
            }
            std::vector<std::size_t> aa;
            for (const auto &[c1, c2] : spec.edge_colors) {
                aa.push_back(params.alice_answer(c1, c2));
            }
            std::vector<std::size_t> ab;
            for (int c : spec.vertex_colors) {
                if (c < 1 || c > inst.num_colors()) {
                    throw InputError("vertex color out of range");
                }
                ab.push_back(static_cast<std::size_t>(c - 1));
            }
            const std::vector<double> wa(params.alice_question_dim(), 1.0);
            const std::vector<double> wb(params.bob_question_dim(), 1.0);
            return {tensor_power(biased_copy_state(params.alice_question_dim(), params.alice_answer_dim(), wa, aa),
                                 params.k()),
                    tensor_power(biased_copy_state(params.bob_question_dim(), params.bob_answer_dim(), wb, ab),
                                 params.k())};
        }
        case AdversaryKind::kEntangledCopies: {
            if (spec.copy_colorings.empty() || spec.copy_colorings.size() != spec.copy_amplitudes.size()) {
                throw InputError("entangled copies need one amplitude per coloring");
            }
            std::vector<StateVector> alice;
            std::vector<StateVector> bob;
            for (const Coloring &c : spec.copy_colorings) {
                alice.push_back(honest_alice_copy(params, c));
                bob.push_back(honest_bob_copy(params, c));
            }
            return {side_superposition(alice, spec.copy_amplitudes, params.k()),
                    side_superposition(bob, spec.copy_amplitudes, params.k())};
        }
        case AdversaryKind::kCustom: {
            if (!spec.custom) {
                throw InputError("custom adversary has no states");
            }
            check_witness_layouts(*spec.custom, params);
            return *spec.custom;
        }
    }
    throw InputError("unknown adversary kind");
}

std::vector<double> biased_family_weights(std::size_t question_dim, double s) {
    if (question_dim < 2) {
        throw InputError("the biased family needs at least two questions");
    }
    if (!(s >= 0 && s <= 1)) {
        throw InputError("bias must lie in [0, 1]");
    }
    std::vector<double> w(question_dim, 1.0);
    w[0] = 1.0 + s;
    w[1] = 1.0 - s;
    return w;
}

double biased_family_failure(std::size_t question_dim, std::size_t answer_dim, std::size_t k, const Rational &eta,
                             double s) {
    const auto w = biased_family_weights(question_dim, s);
    const StateVector copy = biased_copy_state(question_dim, answer_dim, w, {});
    return 1.0 - uniformity_test_accept_prob(tensor_power(copy, k), answer_dim, question_dim, k, eta);
}

double biased_family_bias_for_failure(std::size_t question_dim, std::size_t answer_dim, std::size_t k,
                                      const Rational &eta, double eps) {
    if (!(eps >= 0)) {
        throw InputError("failure probability must be non-negative");
    }
    const double top = biased_family_failure(question_dim, answer_dim, k, eta, 1.0);
    if (eps > top) {
        throw InputError("failure probability exceeds the family maximum " + std::to_string(top));
    }
    double lo = 0;
    double hi = 1;
    for (int it = 0; it < 200 && hi - lo > 1e-15; it++) {
        const double mid = 0.5 * (lo + hi);
        if (biased_family_failure(question_dim, answer_dim, k, eta, mid) < eps) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

double unit_draw(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t draw_index(const std::vector<double> &cdf, std::mt19937_64 &rng) {
    const double u = unit_draw(rng) * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

struct CopyStats {
    double p_zero = 0;           // answer Fourier outcome 0
    double p_zero_and_pass = 0;  // additionally question Fourier outcome 0
    std::vector<double> cdf;     // standard-basis outcomes of the copy
};

CopyStats copy_stats(const StateVector &copy, std::size_t question_dim, std::size_t answer_dim) {
    if (!same_shape(copy.layout(), RegisterLayout::protocol(question_dim, answer_dim, 1))) {
        throw InputError("per-copy state has the wrong layout");
    }
    CopyStats s;
    std::vector<cplx> after(copy.dim());
    apply_matrix_to_register(copy.layout(), 1, qft_matrix(answer_dim), copy.amplitudes(), after);
    std::vector<cplx> block(question_dim);
    for (std::size_t q = 0; q < question_dim; q++) {
        block[q] = after[q * answer_dim];
        s.p_zero += std::norm(block[q]);
    }
    const Matrix fq = qft_matrix(question_dim);
    s.p_zero_and_pass = std::norm(kernels::active().dotu(fq.row(0), block.data(), question_dim));
    double acc = 0;
    for (std::size_t i = 0; i < copy.dim(); i++) {
        acc += std::norm(copy[i]);
        s.cdf.push_back(acc);
    }
    return s;
}

bool sample_uniformity(const CopyStats &s, std::size_t k, std::size_t t_min, std::mt19937_64 &rng) {
    std::size_t zeros = 0;
    bool pass = true;
    for (std::size_t i = 0; i < k; i++) {
        const double u = unit_draw(rng);
        if (u < s.p_zero_and_pass) {
            zeros++;
        } else if (u < s.p_zero) {
            zeros++;
            pass = false;
        }
    }
    return zeros >= t_min && pass;
}

bool sample_consistency(const ProtocolParams &params, const CopyStats &a, const CopyStats &b,
                        std::mt19937_64 &rng) {
    const std::size_t k = params.k();
    std::vector<std::size_t> ad(2 * k);
    std::vector<std::size_t> bd(2 * k);
    for (std::size_t i = 0; i < k; i++) {
        const std::size_t x = draw_index(a.cdf, rng);
        ad[2 * i] = x / params.alice_answer_dim();
        ad[2 * i + 1] = x % params.alice_answer_dim();
    }
    for (std::size_t i = 0; i < k; i++) {
        const std::size_t y = draw_index(b.cdf, rng);
        bd[2 * i] = y / params.bob_answer_dim();
        bd[2 * i + 1] = y % params.bob_answer_dim();
    }
    return consistency_check(params, ad, bd);
}

double std_error(double p, std::uint64_t n) {
    return std::sqrt(std::max(0.0, p * (1 - p)) / static_cast<double>(n));
}

}  // namespace

SampledOutcome sample_protocol(const StateVector &alice_copy, const StateVector &bob_copy,
                               const ProtocolParams &params, std::uint64_t shots, std::mt19937_64 &rng) {
    if (shots == 0) {
        throw InputError("sample mode needs at least one shot");
    }
    const CopyStats a = copy_stats(alice_copy, params.alice_question_dim(), params.alice_answer_dim());
    const CopyStats b = copy_stats(bob_copy, params.bob_question_dim(), params.bob_answer_dim());
    std::uint64_t u1 = 0;
    std::uint64_t u2 = 0;
    std::uint64_t cons = 0;
    std::uint64_t acc = 0;
    for (std::uint64_t s = 0; s < shots; s++) {
        const bool x1 = sample_uniformity(a, params.k(), params.alice_threshold(), rng);
        const bool x2 = sample_uniformity(b, params.k(), params.bob_threshold(), rng);
        const bool xc = sample_consistency(params, a, b, rng);
        u1 += x1;
        u2 += x2;
        cons += xc;
        const bool heads = (rng() >> 63) != 0;
        acc += heads ? (x1 && x2) : xc;
    }
    SampledOutcome r;
    r.shots = shots;
    const double n = static_cast<double>(shots);
    r.estimate = {u1 / n, u2 / n, cons / n, acc / n};
    r.std_error = {std_error(r.estimate.p_unif_1, shots), std_error(r.estimate.p_unif_2, shots),
                   std_error(r.estimate.p_cons, shots), std_error(r.estimate.p_accept, shots)};
    return r;
}

}  // namespace qfree
