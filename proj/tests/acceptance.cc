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

// Acceptance suite: one PASS/FAIL line per criterion, tolerances fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "cli.h"
#include "qfree/analysis.h"
#include "qfree/bellqma.h"
#include "qfree/bounds.h"
#include "qfree/csp.h"
#include "qfree/games.h"
#include "qfree/quantum.h"
#include "test_support.h"

using namespace qfree;

namespace {

constexpr double kFourierTol = 1e-12;
constexpr double kFourierSeconds = 1.0;
constexpr double kCompletenessTol = 1e-10;
constexpr double kCompletenessSeconds = 5.0;
constexpr double kUniformityTol = 1e-10;
constexpr double kZeroErrorDistance = 1e-8;
constexpr int kZeroErrorStates = 20;
constexpr double kTrendFinal = 0.05;
constexpr int kDiscardInstances = 24;
constexpr double kDiscardSeconds = 60.0;
constexpr double kSeesawTol = 1e-6;
constexpr double kGridTol = 1e-3;
constexpr std::uint64_t kFrozenN0 = 1310725;

struct Verdict {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char *f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, x);
    return buf;
}

Verdict fourier_core() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0;
    for (std::size_t k = 1; k <= 64; k++) {
        const Matrix f = qft_matrix(k);
        worst = std::max(worst, (f * f.adjoint()).max_abs_diff(Matrix::identity(k)));
        const RegisterLayout l = RegisterLayout::plain({k});
        for (std::size_t s = 0; s < k; s++) {
            const std::vector<std::size_t> d{s};
            const StateVector once = apply_unitary_to_register(StateVector::basis(l, d), 0, f);
            const StateVector twice = apply_unitary_to_register(once, 0, f);
            for (std::size_t t = 0; t < k; t++) {
                const double expect = t == (k - s) % k ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(twice[t] - expect));
            }
        }
    }
    const double secs = seconds_since(t0);
    return {worst < kFourierTol && secs < kFourierSeconds,
            "K=1..64 max error " + fmt("%.2e", worst) + ", " + fmt("%.3f", secs) + " s"};
}

Verdict completeness() {
    const auto t0 = std::chrono::steady_clock::now();
    const KcolInstance c4 = cycle_instance(4, 2);
    const auto coloring = is_colorable(c4);
    if (!coloring) {
        return {false, "4-cycle reported uncolorable"};
    }
    double worst = 0;
    for (std::size_t k = 1; k <= 3; k++) {
        const ProtocolParams p(c4, k, Rational(1, 2));
        worst = std::max(worst, std::abs(1 - consistency_test_accept_prob(honest_witnesses(p, *coloring), p)));
    }
    const double secs = seconds_since(t0);
    return {worst <= kCompletenessTol && secs < kCompletenessSeconds,
            "k=1..3 max |1 - p_cons| " + fmt("%.2e", worst) + ", " + fmt("%.3f", secs) + " s"};
}

/// sum_{z >= ceil(k (1 - eta) / K')} C(k, z) (1/K')^z (1 - 1/K')^(k - z), in exact arithmetic.
Rational binomial_oracle(std::size_t k, std::size_t kp, const Rational &eta) {
    Rational bound = (1 - eta) * Rational(static_cast<long>(k)) / Rational(static_cast<long>(kp));
    bound.canonicalize();
    BigInt t = bound.get_num() / bound.get_den();
    if (Rational(t) < bound) {
        t += 1;
    }
    std::vector<Rational> row{1};
    for (std::size_t n = 1; n <= k; n++) {
        std::vector<Rational> next(n + 1);
        next[0] = 1;
        next[n] = 1;
        for (std::size_t j = 1; j < n; j++) {
            next[j] = row[j - 1] + row[j];
        }
        row = next;
    }
    const Rational p(1, static_cast<long>(kp));
    Rational sum = 0;
    for (std::size_t z = 0; z <= k; z++) {
        if (Rational(static_cast<long>(z)) < Rational(t)) {
            continue;
        }
        Rational term = row[z];
        for (std::size_t i = 0; i < z; i++) {
            term *= p;
        }
        for (std::size_t i = z; i < k; i++) {
            term *= 1 - p;
        }
        sum += term;
    }
    return sum;
}

Verdict uniformity_completeness() {
    const KcolInstance edge = KcolInstance::inequality(2, {{0, 1}}, 2);
    const Coloring c{{1, 2}};
    double worst = 0;
    int cases = 0;
    for (std::size_t k = 1; k <= 6; k++) {
        for (const Rational &eta : {Rational(3, 10), Rational(1, 2)}) {
            const ProtocolParams p(edge, k, eta);
            // Bob's copies carry K' = 2 answers, Alice's K' = 4.
            const StateVector bob = tensor_power(honest_bob_copy(p, c), k);
            const StateVector alice = tensor_power(honest_alice_copy(p, c), k);
            const double u2 = uniformity_test_accept_prob(bob, 2, 2, k, eta);
            const double u4 = uniformity_test_accept_prob(alice, 4, 1, k, eta);
            worst = std::max(worst, std::abs(u2 - to_double(binomial_oracle(k, 2, eta))));
            worst = std::max(worst, std::abs(u4 - to_double(binomial_oracle(k, 4, eta))));
            cases += 2;
        }
    }
    return {worst <= kUniformityTol, std::to_string(cases) + " cases, max deviation " + fmt("%.2e", worst)};
}

Verdict zero_error() {
    std::mt19937_64 rng(20260101);
    double worst = 0;
    double worst_pass = 0;
    for (int i = 0; i < kZeroErrorStates; i++) {
        const std::size_t q = 2 + rng() % 2;
        const std::size_t kp = 2 + rng() % 2;
        const std::size_t k = 2 + rng() % 2;
        const Rational eta = rng() % 2 ? Rational(3, 10) : Rational(1, 2);
        const std::size_t t = uniformity_threshold(k, kp, eta);
        const auto cp = qfree::testing::random_certainty_passing_state(rng, q, kp, k, t);
        worst_pass = std::max(worst_pass, std::abs(1 - uniformity_test_accept_prob(cp.state, kp, q, k, eta)));
        std::vector<std::size_t> regs;
        for (std::size_t j = 0; j < k; j++) {
            regs.push_back(2 * j);
        }
        const auto d = measurement_distribution(cp.state, regs);
        worst = std::max(worst, tv_to_mixture_family(d.probabilities, q, k, t).distance);
    }
    return {worst <= kZeroErrorDistance && worst_pass <= 1e-10,
            std::to_string(kZeroErrorStates) + " states, max distance " + fmt("%.2e", worst) +
                ", max pass deficit " + fmt("%.2e", worst_pass)};
}

Verdict trend() {
    const std::vector<double> eps{0.3, 0.1, 0.03, 0.01, 0.003};
    std::vector<double> dist;
    for (double e : eps) {
        dist.push_back(cli::trend_point(2, 2, 3, Rational(1, 2), e, kDefaultLpCap).distance);
    }
    bool monotone = true;
    for (std::size_t i = 1; i < dist.size(); i++) {
        monotone = monotone && dist[i] <= dist[i - 1] + 1e-12;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(eps.size());
    for (std::size_t i = 0; i < eps.size(); i++) {
        const double x = std::log(eps[i]);
        const double y = std::log(dist[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    std::string d;
    for (double x : dist) {
        d += (d.empty() ? "" : " ") + fmt("%.3e", x);
    }
    return {monotone && dist.back() < kTrendFinal, "distances " + d + ", log-log slope " + fmt("%.3f", slope)};
}

Verdict discard() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(777);
    int violations = 0;
    int oracle_checks = 0;
    for (int i = 0; i < kDiscardInstances; i++) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const KcolInstance inst = qfree::testing::random_instance(rng, n, 1 + rng() % 4, 2);
        ConsistencyGameSpec s;
        s.instance = inst;
        s.k = 1 + rng() % 2;
        s.l = 1 + rng() % 2;
        s.validate();
        const auto ma = qfree::testing::random_mixture(rng, s.k, inst.num_edges(), 1, 1);
        const auto mb = qfree::testing::random_mixture(rng, s.l, static_cast<std::size_t>(n), 1, 2);
        const QuestionDistribution d = QuestionDistribution::from_mixtures(ma, mb);
        const SubgameCheck c = induced_subgame_value_check(s, d, 1, 1);
        if (!c.holds || !c.lhs.exact || !c.rhs.exact || c.lhs.value > c.rhs.value) {
            violations++;
        }
        ConsistencyGameSpec sub = s;
        sub.k = 1;
        sub.l = 1;
        if (qfree::testing::brute_force_game_value(sub, QuestionDistribution::uniform(sub)) != c.rhs.value) {
            violations++;
        }
        oracle_checks++;
    }
    const double secs = seconds_since(t0);
    return {violations == 0 && secs < kDiscardSeconds,
            std::to_string(kDiscardInstances) + " instances, " + std::to_string(violations) + " violations, " +
                std::to_string(oracle_checks) + " oracle checks, " + fmt("%.2f", secs) + " s"};
}

Verdict soundness() {
    const KcolInstance tri = triangle_instance(2);
    ConsistencyGameSpec s;
    s.instance = tri;
    s.validate();
    const QuestionDistribution u = QuestionDistribution::uniform(s);
    const GameValueReport r = game_value(s, u);
    const Rational oracle = qfree::testing::brute_force_game_value(s, u);
    double best = 0;
    double best_cons = 0;
    for (std::size_t k = 1; k <= 2; k++) {
        const ProtocolParams p(tri, k, Rational(1, 2));
        for (std::uint32_t edges = 0; edges < 64; edges++) {
            for (std::uint32_t verts = 0; verts < 8; verts++) {
                AdversarySpec a;
                a.kind = AdversaryKind::kCheatingColoring;
                for (int e = 0; e < 3; e++) {
                    const std::uint32_t code = (edges >> (2 * e)) & 3;
                    a.edge_colors.emplace_back(static_cast<int>(code >> 1) + 1, static_cast<int>(code & 1) + 1);
                }
                for (int v = 0; v < 3; v++) {
                    a.vertex_colors.push_back(static_cast<int>((verts >> v) & 1) + 1);
                }
                const ProtocolOutcome o = protocol_accept_prob(build_witnesses(a, p), p);
                best = std::max(best, o.p_accept);
                best_cons = std::max(best_cons, o.p_cons);
            }
        }
    }
    const bool pass = r.exact && r.value < 1 && r.value == oracle && best < 1;
    return {pass, "G^{1,1} value " + to_string(r.value) + " (oracle " + to_string(oracle) +
                      "), best cheating p_accept " + fmt("%.6f", best) + ", best p_cons " + fmt("%.6f", best_cons)};
}

Verdict game_table() {
    bool ok = true;
    std::string detail;
    for (bool gapless : {false, true}) {
        for (const auto &name : builtin_game_names()) {
            GameSpec g = builtin_game_spec(name);
            g.gapless = gapless;
            const GameTable t = extract_game_table(g, 1);
            const auto bytes = serialize_table(t);
            const std::uint64_t want = gapless ? 16 : 64;
            ok = ok && payload_bits(bytes) == want && table_bit_size(1, 1, 1, gapless) == want;
            ok = ok && deserialize_table(bytes) == table_image(t) && serialize_table(deserialize_table(bytes)) == bytes;
        }
    }
    detail += "gapped " + std::to_string(table_bit_size(1, 1, 1, false)) + " bits, gapless " +
              std::to_string(table_bit_size(1, 1, 1, true)) + " bits, round trip ok; advice bits";
    std::vector<GameSpec> games;
    for (const auto &name : builtin_game_names()) {
        games.push_back(builtin_game_spec(name));
    }
    const AdviceString adv = build_advice(games, 1);
    const bool b_equal = decide_with_advice(builtin_game_spec("toy-equal"), 1, adv);
    const bool b_half = decide_with_advice(builtin_game_spec("toy-half"), 1, adv);
    ok = ok && b_equal && !b_half;
    detail += std::string(" toy-equal=") + (b_equal ? "1" : "0") + " toy-half=" + (b_half ? "1" : "0");
    return {ok, detail};
}

Verdict ledger() {
    const LedgerConfig cfg;
    const Trajectory t = gapless_recursion(1e6L, cfg);
    // Direct oracle: largest l with ceil(2 log2 l + 7 + 10) >= l.
    std::uint64_t q0 = 0;
    for (std::uint64_t l = 1; l < 100000; l++) {
        if (std::ceil(2 * std::log2(static_cast<long double>(l)) + 17 - 1e-12L) >= static_cast<long double>(l)) {
            q0 = l;
        }
    }
    bool ok = t.steps == std::vector<std::uint64_t>{57, 29, 27} && t.q0 == 27 && q0 == 27;
    std::size_t worst_ratio_num = 0;
    unsigned worst_ratio_den = 1;
    for (int e = 4; e <= 64; e++) {
        const long double l0 = std::ldexp(1.0L, e);
        const Trajectory te = gapless_recursion(l0, cfg);
        unsigned ls = 0;
        for (long double x = l0; x > 1; x = std::log2(x)) {
            ls++;
        }
        ok = ok && te.iterations() <= 3 * ls;
        if (te.iterations() * worst_ratio_den > worst_ratio_num * ls) {
            worst_ratio_num = te.iterations();
            worst_ratio_den = ls;
        }
        const long double a0 = 5;
        long double expect = a0;
        for (auto step : te.steps) {
            expect += static_cast<long double>(step) + 1;
        }
        ok = ok && answer_length_accounting(a0, te, LedgerMode::kGapless, cfg) == expect;
    }
    const long double acc = answer_length_accounting(100, t, LedgerMode::kGapless, cfg);
    ok = ok && acc == 100 + 58 + 30 + 28;
    return {ok, "trajectory 57,29,27 with Q0=" + std::to_string(t.q0) + " (oracle " + std::to_string(q0) +
                    "); worst iterations/log* " + std::to_string(worst_ratio_num) + "/" +
                    std::to_string(worst_ratio_den) + "; a0=100 gives " + fmt("%.0f", static_cast<double>(acc))};
}

Verdict seesaw() {
    const double h = 1 / std::numbers::sqrt2;
    const Matrix m = Matrix::outer(std::vector<cplx>{h, 0, 0, h});
    SepOptions o;
    o.seed = 12345;
    const SepResult r = hsep_seesaw(m, 2, 2, o);
    bool monotone = true;
    for (std::size_t i = 1; i < r.trace.size(); i++) {
        monotone = monotone && r.trace[i] >= r.trace[i - 1] - 1e-12;
    }
    // Grid oracle over product qubit states (cos a, e^{i p} sin a) (x) (cos b, e^{i q} sin b).
    const int steps = 24;
    double grid = 0;
    for (int ia = 0; ia <= steps; ia++) {
        for (int ib = 0; ib <= steps; ib++) {
            for (int ip = 0; ip < steps; ip++) {
                for (int iq = 0; iq < steps; iq++) {
                    const double a = std::numbers::pi / 2 * ia / steps;
                    const double b = std::numbers::pi / 2 * ib / steps;
                    const double p = 2 * std::numbers::pi * ip / steps;
                    const double q = 2 * std::numbers::pi * iq / steps;
                    const cplx amp = std::cos(a) * std::cos(b) + std::polar(std::sin(a) * std::sin(b), p + q);
                    grid = std::max(grid, std::norm(amp) / 2);
                }
            }
        }
    }
    const bool pass = std::abs(r.value - 0.5) <= kSeesawTol && std::abs(r.value - grid) <= kGridTol &&
                      r.value >= grid - 1e-9 && monotone && !r.trace.empty();
    return {pass, "seesaw " + fmt("%.12f", r.value) + ", grid " + fmt("%.12f", grid) + ", " +
                      std::to_string(r.trace.size()) + " monotone half-steps"};
}

Verdict lower_bound() {
    const double gamma = 0.4, c = 0.9, eps = 0.05;
    const std::uint64_t n_max = std::uint64_t{1} << 32;
    std::vector<std::uint64_t> ns;
    for (unsigned e = 1; e <= 32; e++) {
        ns.push_back(std::uint64_t{1} << e);
    }
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 2000; i++) {
        ns.push_back(kFrozenN0 + rng() % (n_max - kFrozenN0 + 1));
    }
    // First n of every q + a block up to 2^32.
    for (std::uint64_t qa = 1; qa <= 12; qa++) {
        const auto start = static_cast<std::uint64_t>(std::ceil(std::exp2(static_cast<double>(qa) / gamma)));
        if (start <= n_max) {
            ns.push_back(start);
        }
    }
    for (std::uint64_t d = 0; d < 5; d++) {
        ns.push_back(kFrozenN0 - 2 + d);
    }
    ns.push_back(n_max);
    const MarginReport r = lower_bound_margin(gamma, c, eps, 1, ns, n_max);
    auto oracle = [&](std::uint64_t n) {
        std::uint64_t qa = 0;
        while (std::exp2(static_cast<long double>(qa + 1) / gamma) <= static_cast<long double>(n)) {
            qa++;
        }
        const long double left = (2.0L * qa + 2) * std::exp2(2.0L * qa);
        const long double right = c * static_cast<long double>(n) + std::log2(static_cast<long double>(eps));
        return left <= right;
    };
    bool ok = r.n0 == kFrozenN0 && !oracle(kFrozenN0 - 1) && oracle(kFrozenN0);
    std::size_t tested = 0;
    for (const auto &row : r.rows) {
        if (row.n >= r.n0) {
            ok = ok && row.dominates && oracle(row.n);
            tested++;
        }
    }
    return {ok, "n0=" + std::to_string(r.n0) + ", dominance on " + std::to_string(tested) + " tested n up to 2^32"};
}

}  // namespace

int main() {
    struct Criterion {
        const char *name;
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> all{
        {"fourier-core", fourier_core},
        {"completeness-4-cycle", completeness},
        {"uniformity-binomial", uniformity_completeness},
        {"zero-error-mixture", zero_error},
        {"uniformity-trend", trend},
        {"discard-questions", discard},
        {"soundness-triangle", soundness},
        {"game-table", game_table},
        {"ledger", ledger},
        {"hsep-seesaw", seesaw},
        {"lower-bound-margin", lower_bound},
    };
    int failures = 0;
    for (const auto &c : all) {
        Verdict o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
