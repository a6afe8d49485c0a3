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

#include "qfree/games.h"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>

#include "qfree/common.h"

namespace qfree {

std::string model_name(QuestionModel m) {
    return m == QuestionModel::kTuple ? "tuple" : "subset";
}

QuestionModel parse_model(const std::string &name) {
    if (name == "tuple") {
        return QuestionModel::kTuple;
    }
    if (name == "subset") {
        return QuestionModel::kSubset;
    }
    throw InputError("unknown question model '" + name + "' (expected tuple or subset)");
}

void ConsistencyGameSpec::validate() const {
    if (k == 0 || l == 0) {
        throw InputError("k and l must be positive");
    }
    if (instance.num_edges() == 0) {
        throw InputError("the consistency game needs at least one edge");
    }
    if (model == QuestionModel::kSubset &&
        (k > instance.num_edges() || l > static_cast<std::size_t>(instance.num_vertices()))) {
        throw InputError("subset model requires k <= m and l <= n");
    }
}

namespace {

void check_question(const Question &q, std::size_t len, std::size_t alphabet, QuestionModel model,
                    const char *who) {
    if (q.size() != len) {
        throw InputError(std::string(who) + " question has length " + std::to_string(q.size()) + ", expected " +
                         std::to_string(len));
    }
    for (std::size_t i = 0; i < q.size(); i++) {
        if (q[i] >= alphabet) {
            throw InputError(std::string(who) + " question entry out of range");
        }
        if (model == QuestionModel::kSubset && i > 0 && q[i] <= q[i - 1]) {
            throw InputError(std::string(who) + " subset question must be strictly increasing");
        }
    }
}

}  // namespace

void ConsistencyGameSpec::check_alice_question(const Question &q) const {
    check_question(q, k, instance.num_edges(), model, "Alice");
}

void ConsistencyGameSpec::check_bob_question(const Question &q) const {
    check_question(q, l, static_cast<std::size_t>(instance.num_vertices()), model, "Bob");
}

Factor Factor::exact(const std::map<Question, Rational> &probs) {
    Factor f;
    f.exact_ = true;
    for (const auto &[q, p] : probs) {
        if (p < 0) {
            throw InputError("negative question probability");
        }
        if (p > 0) {
            f.support_.push_back(q);
            f.probs_.push_back(to_double(p));
            f.exact_probs_.push_back(p);
        }
    }
    return f;
}

Factor Factor::real(const std::map<Question, double> &probs) {
    Factor f;
    for (const auto &[q, p] : probs) {
        if (!(p >= 0) || !std::isfinite(p)) {
            throw InputError("question probabilities must be finite and non-negative");
        }
        if (p > 0) {
            f.support_.push_back(q);
            f.probs_.push_back(p);
        }
    }
    return f;
}

double Factor::at(const Question &q) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), q);
    if (it == support_.end() || *it != q) {
        return 0;
    }
    return probs_[static_cast<std::size_t>(it - support_.begin())];
}

double Factor::total() const {
    return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

MixtureAnnotation MixtureAnnotation::pure_uniform(std::size_t k, std::size_t alphabet) {
    MixtureAnnotation m;
    m.k = k;
    m.alphabet = alphabet;
    MixtureTerm t;
    t.uniform_coords.resize(k);
    std::iota(t.uniform_coords.begin(), t.uniform_coords.end(), 0);
    t.weight = 1;
    t.junk[{}] = 1;
    m.terms.push_back(std::move(t));
    return m;
}

void MixtureAnnotation::validate() const {
    if (k == 0 || alphabet == 0) {
        throw InputError("mixture needs positive k and alphabet");
    }
    for (const auto &t : terms) {
        if (t.weight < 0) {
            throw InputError("mixture weight is negative");
        }
        for (std::size_t i = 0; i < t.uniform_coords.size(); i++) {
            if (t.uniform_coords[i] >= k || (i > 0 && t.uniform_coords[i] <= t.uniform_coords[i - 1])) {
                throw InputError("uniform coordinates must be increasing and below k");
            }
        }
        const std::size_t rest = k - t.uniform_coords.size();
        Rational mass = 0;
        for (const auto &[z, p] : t.junk) {
            if (z.size() != rest) {
                throw InputError("junk outcome has the wrong length");
            }
            for (std::size_t v : z) {
                if (v >= alphabet) {
                    throw InputError("junk outcome out of range");
                }
            }
            if (p < 0) {
                throw InputError("junk probability is negative");
            }
            mass += p;
        }
        if (mass != 1) {
            throw InputError("junk distribution of a mixture term does not sum to 1");
        }
    }
    for (const auto &[q, p] : error) {
        if (q.size() != k) {
            throw InputError("error outcome has the wrong length");
        }
        for (std::size_t v : q) {
            if (v >= alphabet) {
                throw InputError("error outcome out of range");
            }
        }
    }
}

std::map<Question, Rational> MixtureAnnotation::expand_good() const {
    validate();
    const std::uint64_t total = checked_pow(alphabet, k, 50'000'000, "mixture expansion");
    (void)total;
    std::map<Question, Rational> out;
    for (const auto &t : terms) {
        if (t.weight == 0) {
            continue;
        }
        const std::size_t u = t.uniform_coords.size();
        std::vector<bool> is_uniform(k, false);
        for (std::size_t c : t.uniform_coords) {
            is_uniform[c] = true;
        }
        BigInt qu;
        mpz_ui_pow_ui(qu.get_mpz_t(), alphabet, u);
        const Rational scale = t.weight / Rational(qu);
        const std::uint64_t cells = checked_pow(alphabet, u, 50'000'000, "mixture expansion");
        for (const auto &[z, p] : t.junk) {
            if (p == 0) {
                continue;
            }
            const Rational w = scale * p;
            for (std::uint64_t c = 0; c < cells; c++) {
                Question q(k);
                std::uint64_t rem = c;
                for (std::size_t i = u; i-- > 0;) {
                    q[t.uniform_coords[i]] = rem % alphabet;
                    rem /= alphabet;
                }
                std::size_t zi = 0;
                for (std::size_t i = 0; i < k; i++) {
                    if (!is_uniform[i]) {
                        q[i] = z[zi++];
                    }
                }
                out[q] += w;
            }
        }
    }
    return out;
}

std::map<Question, Rational> MixtureAnnotation::expand() const {
    auto out = expand_good();
    for (const auto &[q, p] : error) {
        out[q] += p;
    }
    return out;
}

Rational MixtureAnnotation::error_l1() const {
    Rational s = 0;
    for (const auto &[q, p] : error) {
        s += abs(p);
    }
    return s;
}

namespace {

std::map<Question, Rational> uniform_questions(std::size_t len, std::size_t alphabet, QuestionModel model) {
    std::map<Question, Rational> out;
    if (model == QuestionModel::kTuple) {
        const std::uint64_t count = checked_pow(alphabet, len, 10'000'000, "uniform question space");
        const Rational p(1, 1);
        for (std::uint64_t c = 0; c < count; c++) {
            Question q(len);
            std::uint64_t rem = c;
            for (std::size_t i = len; i-- > 0;) {
                q[i] = rem % alphabet;
                rem /= alphabet;
            }
            out.emplace(std::move(q), Rational(1, static_cast<unsigned long>(count)));
        }
        return out;
    }
    const BigInt total = binomial(static_cast<unsigned>(alphabet), static_cast<unsigned>(len));
    if (total > 10'000'000) {
        throw CapError("uniform question space: size exceeds cap 10000000");
    }
    Question q(len);
    std::iota(q.begin(), q.end(), 0);
    const Rational p = Rational(1) / Rational(total);
    while (true) {
        out.emplace(q, p);
        std::size_t i = len;
        while (i > 0 && q[i - 1] == alphabet - len + i - 1) {
            i--;
        }
        if (i == 0) {
            break;
        }
        q[i - 1]++;
        for (std::size_t j = i; j < len; j++) {
            q[j] = q[j - 1] + 1;
        }
    }
    return out;
}

}  // namespace

QuestionDistribution QuestionDistribution::uniform(const ConsistencyGameSpec &spec) {
    spec.validate();
    QuestionDistribution d;
    d.alice = Factor::exact(uniform_questions(spec.k, spec.instance.num_edges(), spec.model));
    d.bob = Factor::exact(
        uniform_questions(spec.l, static_cast<std::size_t>(spec.instance.num_vertices()), spec.model));
    return d;
}

QuestionDistribution QuestionDistribution::from_mixtures(MixtureAnnotation alice, MixtureAnnotation bob) {
    QuestionDistribution d;
    d.alice = Factor::exact(alice.expand());
    d.bob = Factor::exact(bob.expand());
    d.alice_mixture = std::move(alice);
    d.bob_mixture = std::move(bob);
    return d;
}

void QuestionDistribution::validate(const ConsistencyGameSpec &spec) const {
    spec.validate();
    for (const auto &q : alice.support()) {
        spec.check_alice_question(q);
    }
    for (const auto &q : bob.support()) {
        spec.check_bob_question(q);
    }
    if (std::abs(alice.total() - 1) > 1e-9 || std::abs(bob.total() - 1) > 1e-9) {
        throw InputError("question distribution factor does not sum to 1");
    }
    auto check_mix = [](const std::optional<MixtureAnnotation> &mix, const Factor &f, std::size_t len,
                        std::size_t alphabet, const char *who) {
        if (!mix) {
            return;
        }
        if (mix->k != len || mix->alphabet != alphabet) {
            throw InputError(std::string(who) + " mixture annotation has the wrong shape");
        }
        const auto full = mix->expand();
        for (const auto &[q, p] : full) {
            if (std::abs(to_double(p) - f.at(q)) > 1e-9) {
                throw InputError(std::string(who) + " mixture annotation does not reproduce its factor");
            }
        }
        for (std::size_t i = 0; i < f.support().size(); i++) {
            if (!full.contains(f.support()[i]) && f.probs()[i] > 1e-9) {
                throw InputError(std::string(who) + " mixture annotation does not reproduce its factor");
            }
        }
    };
    if ((alice_mixture || bob_mixture) && spec.model != QuestionModel::kTuple) {
        throw InputError("mixture annotations are defined for the tuple model only");
    }
    check_mix(alice_mixture, alice, spec.k, spec.instance.num_edges(), "Alice");
    check_mix(bob_mixture, bob, spec.l, static_cast<std::size_t>(spec.instance.num_vertices()), "Bob");
}

std::vector<int> alice_vertices(const KcolInstance &inst, const Question &edges) {
    std::vector<int> v;
    for (std::size_t e : edges) {
        v.push_back(inst.edge(e).u);
        v.push_back(inst.edge(e).v);
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<int> bob_vertices(const Question &vertices) {
    std::vector<int> v(vertices.begin(), vertices.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

namespace {

std::size_t slot(const std::vector<int> &verts, int v) {
    return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
}

bool in_list(const std::vector<int> &verts, int v) {
    return std::binary_search(verts.begin(), verts.end(), v);
}

}  // namespace

bool consistency_win(const KcolInstance &inst, const Question &x, const Question &y,
                     const std::vector<int> &alice_colors, const std::vector<int> &bob_colors) {
    const auto va = alice_vertices(inst, x);
    const auto vb = bob_vertices(y);
    if (alice_colors.size() != va.size() || bob_colors.size() != vb.size()) {
        throw InputError("answer does not color exactly the question's vertices");
    }
    for (std::size_t e : x) {
        const Edge &ed = inst.edge(e);
        const int cu = alice_colors[slot(va, ed.u)];
        const int cv = alice_colors[slot(va, ed.v)];
        bool touched = false;
        for (int w : {ed.u, ed.v}) {
            if (!in_list(vb, w)) {
                continue;
            }
            touched = true;
            if (bob_colors[slot(vb, w)] != (w == ed.u ? cu : cv)) {
                return false;
            }
        }
        if (touched && !inst.allowed(e, cu, cv)) {
            return false;
        }
    }
    return true;
}

namespace {

std::vector<int> decode_colors(std::size_t answer, std::size_t count, int num_colors) {
    std::vector<int> c(count);
    for (std::size_t i = count; i-- > 0;) {
        c[i] = static_cast<int>(answer % static_cast<std::size_t>(num_colors)) + 1;
        answer /= static_cast<std::size_t>(num_colors);
    }
    return c;
}

std::uint64_t saturating_product(const std::vector<std::size_t> &v) {
    std::uint64_t r = 1;
    for (std::size_t x : v) {
        if (x != 0 && r > UINT64_MAX / x) {
            return UINT64_MAX;
        }
        r *= x;
    }
    return r;
}

// Win tables between every pair of support questions of the two sides.
struct PairTables {
    std::size_t ns = 0;
    std::size_t no = 0;
    // Index s * no + o; empty when no vertex is shared (always win).
    std::vector<std::vector<std::uint8_t>> win;
};

struct SideInfo {
    std::vector<Question> qs;
    std::vector<std::vector<int>> verts;
    std::vector<std::size_t> nans;
};

SideInfo side_info(const Factor &f, bool alice, const KcolInstance &inst) {
    SideInfo s;
    s.qs = f.support();
    for (const auto &q : s.qs) {
        auto v = alice ? alice_vertices(inst, q) : bob_vertices(q);
        std::vector<std::size_t> dims(v.size(), static_cast<std::size_t>(inst.num_colors()));
        const std::uint64_t n = saturating_product(dims);
        if (n > (std::uint64_t{1} << 24)) {
            throw CapError("answer space of a single question exceeds 2^24");
        }
        s.nans.push_back(static_cast<std::size_t>(n));
        s.verts.push_back(std::move(v));
    }
    return s;
}

PairTables build_tables(const KcolInstance &inst, const SideInfo &alice, const SideInfo &bob, bool s_is_alice) {
    const SideInfo &S = s_is_alice ? alice : bob;
    const SideInfo &O = s_is_alice ? bob : alice;
    PairTables t;
    t.ns = S.qs.size();
    t.no = O.qs.size();
    t.win.resize(t.ns * t.no);
    std::uint64_t budget = 0;
    for (std::size_t s = 0; s < t.ns; s++) {
        for (std::size_t o = 0; o < t.no; o++) {
            const std::size_t xi = s_is_alice ? s : o;
            const std::size_t yi = s_is_alice ? o : s;
            bool overlap = false;
            for (int v : bob.verts[yi]) {
                if (in_list(alice.verts[xi], v)) {
                    overlap = true;
                    break;
                }
            }
            if (!overlap) {
                continue;
            }
            const std::size_t na = alice.nans[xi];
            const std::size_t nb = bob.nans[yi];
            budget += na * nb;
            if (budget > (std::uint64_t{1} << 28)) {
                throw CapError("win tables exceed 2^28 entries");
            }
            auto &tab = t.win[s * t.no + o];
            tab.resize(S.nans[s] * O.nans[o]);
            for (std::size_t a = 0; a < na; a++) {
                const auto ca = decode_colors(a, alice.verts[xi].size(), inst.num_colors());
                for (std::size_t b = 0; b < nb; b++) {
                    const auto cb = decode_colors(b, bob.verts[yi].size(), inst.num_colors());
                    const bool w = consistency_win(inst, alice.qs[xi], bob.qs[yi], ca, cb);
                    const std::size_t as = s_is_alice ? a : b;
                    const std::size_t bo = s_is_alice ? b : a;
                    tab[as * O.nans[o] + bo] = w;
                }
            }
        }
    }
    return t;
}

template <class N>
struct Search {
    N best;
    std::vector<std::size_t> sigma;
    std::vector<std::size_t> response;
    std::uint64_t steps = 0;
};

// Enumerates deterministic strategies sigma of side S in lexicographic order
// and maximizes sum_o po[o] max_b sum_s ps[s] win(s, o, sigma(s), b).
template <class N>
Search<N> enumerate(const PairTables &t, const SideInfo &S, const SideInfo &O, const std::vector<N> &ps,
                    const std::vector<N> &po) {
    const std::size_t ns = t.ns;
    const std::size_t no = t.no;
    std::vector<std::size_t> off(no + 1, 0);
    for (std::size_t o = 0; o < no; o++) {
        off[o + 1] = off[o] + O.nans[o];
    }
    std::vector<N> sum(off[no], N(0));
    std::vector<std::size_t> sigma(ns, 0);

    auto add = [&](std::size_t s, std::size_t a, int sign) {
        for (std::size_t o = 0; o < no; o++) {
            const auto &tab = t.win[s * no + o];
            const std::size_t nb = O.nans[o];
            if (tab.empty()) {
                for (std::size_t b = 0; b < nb; b++) {
                    if (sign > 0) {
                        sum[off[o] + b] += ps[s];
                    } else {
                        sum[off[o] + b] -= ps[s];
                    }
                }
                continue;
            }
            const std::uint8_t *row = tab.data() + a * nb;
            for (std::size_t b = 0; b < nb; b++) {
                if (row[b]) {
                    if (sign > 0) {
                        sum[off[o] + b] += ps[s];
                    } else {
                        sum[off[o] + b] -= ps[s];
                    }
                }
            }
        }
    };
    auto evaluate = [&]() {
        N v(0);
        for (std::size_t o = 0; o < no; o++) {
            N m = sum[off[o]];
            for (std::size_t b = 1; b < O.nans[o]; b++) {
                if (sum[off[o] + b] > m) {
                    m = sum[off[o] + b];
                }
            }
            v += po[o] * m;
        }
        return v;
    };

    for (std::size_t s = 0; s < ns; s++) {
        add(s, 0, +1);
    }
    Search<N> r;
    r.best = evaluate();
    r.sigma = sigma;
    r.steps = 1;
    while (true) {
        std::size_t p = ns;
        while (p > 0 && sigma[p - 1] + 1 == S.nans[p - 1]) {
            p--;
        }
        if (p == 0) {
            break;
        }
        for (std::size_t j = p; j < ns; j++) {
            add(j, sigma[j], -1);
            sigma[j] = 0;
            add(j, 0, +1);
        }
        add(p - 1, sigma[p - 1], -1);
        sigma[p - 1]++;
        add(p - 1, sigma[p - 1], +1);
        r.steps++;
        const N v = evaluate();
        if (v > r.best) {
            r.best = v;
            r.sigma = sigma;
        }
    }
    // Best response to the optimum, smallest answer among ties.
    std::fill(sum.begin(), sum.end(), N(0));
    for (std::size_t s = 0; s < ns; s++) {
        add(s, r.sigma[s], +1);
    }
    r.response.assign(no, 0);
    for (std::size_t o = 0; o < no; o++) {
        for (std::size_t b = 1; b < O.nans[o]; b++) {
            if (sum[off[o] + b] > sum[off[o] + r.response[o]]) {
                r.response[o] = b;
            }
        }
    }
    return r;
}

BigInt lcm_of_denominators(const std::vector<Rational> &ps) {
    BigInt l = 1;
    for (const auto &p : ps) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.get_den_mpz_t());
    }
    return l;
}

std::vector<BigInt> scaled(const std::vector<Rational> &ps, const BigInt &l) {
    std::vector<BigInt> out;
    for (const auto &p : ps) {
        Rational q = p * Rational(l);
        q.canonicalize();
        out.push_back(q.get_num());
    }
    return out;
}

}  // namespace

GameValueReport game_value(const ConsistencyGameSpec &spec, const QuestionDistribution &dist, std::uint64_t cap) {
    dist.validate(spec);
    const auto &inst = spec.instance;
    const SideInfo alice = side_info(dist.alice, true, inst);
    const SideInfo bob = side_info(dist.bob, false, inst);
    const std::uint64_t na = saturating_product(alice.nans);
    const std::uint64_t nb = saturating_product(bob.nans);
    const bool s_is_alice = na <= nb;
    const std::uint64_t count = std::min(na, nb);
    if (count > cap) {
        throw CapError("classical value needs " + (count == UINT64_MAX ? std::string("more than 2^64")
                                                                        : std::to_string(count)) +
                       " strategies, above cap " + std::to_string(cap));
    }
    const SideInfo &S = s_is_alice ? alice : bob;
    const SideInfo &O = s_is_alice ? bob : alice;
    const Factor &fs = s_is_alice ? dist.alice : dist.bob;
    const Factor &fo = s_is_alice ? dist.bob : dist.alice;
    const PairTables tables = build_tables(inst, alice, bob, s_is_alice);

    GameValueReport rep;
    rep.enumerated_side = s_is_alice ? "alice" : "bob";
    std::vector<std::size_t> sigma;
    std::vector<std::size_t> response;
    if (fs.is_exact() && fo.is_exact()) {
        rep.exact = true;
        const BigInt ls = lcm_of_denominators(fs.exact_probs());
        const BigInt lo = lcm_of_denominators(fo.exact_probs());
        const auto ps = scaled(fs.exact_probs(), ls);
        const auto po = scaled(fo.exact_probs(), lo);
        const BigInt denom = ls * lo;
        if (denom < (BigInt(1) << 62)) {
            std::vector<std::int64_t> ps64;
            std::vector<std::int64_t> po64;
            for (const auto &x : ps) {
                ps64.push_back(x.get_si());
            }
            for (const auto &x : po) {
                po64.push_back(x.get_si());
            }
            const auto r = enumerate<std::int64_t>(tables, S, O, ps64, po64);
            rep.value = Rational(BigInt(std::to_string(r.best)), denom);
            rep.strategies_enumerated = r.steps;
            sigma = r.sigma;
            response = r.response;
        } else {
            const auto r = enumerate<BigInt>(tables, S, O, ps, po);
            rep.value = Rational(r.best, denom);
            rep.strategies_enumerated = r.steps;
            sigma = r.sigma;
            response = r.response;
        }
        rep.value.canonicalize();
        rep.value_real = to_double(rep.value);
    } else {
        const auto r = enumerate<double>(tables, S, O, fs.probs(), fo.probs());
        rep.value_real = std::clamp(r.best, 0.0, 1.0);
        rep.value = rational_from_double(rep.value_real);
        const double terms = static_cast<double>(S.qs.size() + O.qs.size() + 2);
        rep.error_bound = 4.0 * terms * DBL_EPSILON;
        rep.strategies_enumerated = r.steps;
        sigma = r.sigma;
        response = r.response;
    }
    for (std::size_t s = 0; s < S.qs.size(); s++) {
        auto colors = decode_colors(sigma[s], S.verts[s].size(), inst.num_colors());
        (s_is_alice ? rep.witness.alice : rep.witness.bob).emplace(S.qs[s], std::move(colors));
    }
    for (std::size_t o = 0; o < O.qs.size(); o++) {
        auto colors = decode_colors(response[o], O.verts[o].size(), inst.num_colors());
        (s_is_alice ? rep.witness.bob : rep.witness.alice).emplace(O.qs[o], std::move(colors));
    }
    if (rep.value_real < -1e-12 || rep.value_real > 1 + 1e-12) {
        throw InvariantError("game value outside [0, 1]");
    }
    return rep;
}

QuestionDistribution restrict_distribution(const QuestionDistribution &dist, bool drop_error_terms) {
    if (!drop_error_terms) {
        return dist;
    }
    if (!dist.alice_mixture && !dist.bob_mixture) {
        throw InputError("restricting a distribution needs a mixture annotation");
    }
    QuestionDistribution out = dist;
    auto restrict_side = [&](std::optional<MixtureAnnotation> &mix, Factor &f) {
        if (!mix) {
            return;
        }
        const Rational discarded = mix->error_l1();
        auto good = mix->expand_good();
        Rational mass = 0;
        for (const auto &[q, p] : good) {
            mass += p;
        }
        if (mass <= 0) {
            throw InputError("all mass lies in error terms");
        }
        for (auto &[q, p] : good) {
            p /= mass;
        }
        for (auto &t : mix->terms) {
            t.weight /= mass;
        }
        mix->error.clear();
        f = Factor::exact(good);
        out.discarded_mass += to_double(discarded);
    };
    restrict_side(out.alice_mixture, out.alice);
    restrict_side(out.bob_mixture, out.bob);
    return out;
}

SubgameCheck induced_subgame_value_check(const ConsistencyGameSpec &spec, const QuestionDistribution &dist,
                                         std::size_t k_sub, std::size_t l_sub, std::uint64_t cap) {
    if (spec.model != QuestionModel::kTuple) {
        throw InputError("the induced subgame check uses the tuple model");
    }
    if (!dist.alice_mixture || !dist.bob_mixture) {
        throw InputError("the induced subgame check needs mixture annotations on both sides");
    }
    if (k_sub == 0 || l_sub == 0 || k_sub > spec.k || l_sub > spec.l) {
        throw InputError("need 1 <= k' <= k and 1 <= l' <= l");
    }
    auto check_terms = [](const MixtureAnnotation &m, std::size_t size, const char *who) {
        if (!m.error.empty()) {
            throw InputError(std::string(who) + " mixture still has error terms; restrict it first");
        }
        for (const auto &t : m.terms) {
            if (t.weight != 0 && t.uniform_coords.size() != size) {
                throw InputError(std::string(who) + " mixture term has |T| != " + std::to_string(size));
            }
        }
    };
    check_terms(*dist.alice_mixture, k_sub, "Alice");
    check_terms(*dist.bob_mixture, l_sub, "Bob");
    SubgameCheck r;
    r.lhs = game_value(spec, dist, cap);
    const ConsistencyGameSpec sub{spec.instance, k_sub, l_sub, QuestionModel::kTuple};
    r.rhs = game_value(sub, QuestionDistribution::uniform(sub), cap);
    if (r.lhs.exact && r.rhs.exact) {
        r.holds = r.lhs.value <= r.rhs.value;
    } else {
        r.holds = r.lhs.value_real <= r.rhs.value_real + r.lhs.error_bound + r.rhs.error_bound;
    }
    return r;
}

QuestionDistribution measured_question_distribution(const WitnessPair &pair, const ProtocolParams &params) {
    check_witness_layouts(pair, params);
    std::vector<std::size_t> qregs;
    for (std::size_t i = 0; i < params.k(); i++) {
        qregs.push_back(2 * i);
    }
    auto side = [&](const StateVector &s) {
        try {
            const auto d = measure_flat_exact(s, qregs);
            return Factor::exact(d.probabilities);
        } catch (const InputError &) {
            const auto d = measurement_distribution(s, qregs);
            return Factor::real(d.probabilities);
        }
    };
    QuestionDistribution d;
    d.alice = side(pair.psi1);
    d.bob = side(pair.psi2);
    return d;
}

Rational birthday_collision_prob(const KcolInstance &inst, std::size_t k, std::size_t l, QuestionModel model) {
    if (k == 0 || l == 0) {
        return 0;
    }
    const std::size_t m = inst.num_edges();
    const std::size_t n = static_cast<std::size_t>(inst.num_vertices());
    if (m == 0 || n == 0) {
        return 0;
    }
    if (model == QuestionModel::kSubset && (k > m || l > n)) {
        throw InputError("subset model requires k <= m and l <= n");
    }
    const auto questions = uniform_questions(k, m, model);
    Rational miss = 0;
    for (const auto &[x, p] : questions) {
        const std::size_t covered = alice_vertices(inst, x).size();
        const std::size_t free = n - covered;
        Rational avoid;
        if (model == QuestionModel::kTuple) {
            BigInt num;
            BigInt den;
            mpz_ui_pow_ui(num.get_mpz_t(), free, l);
            mpz_ui_pow_ui(den.get_mpz_t(), n, l);
            avoid = Rational(num, den);
        } else {
            avoid = Rational(binomial(static_cast<unsigned>(free), static_cast<unsigned>(l)),
                             binomial(static_cast<unsigned>(n), static_cast<unsigned>(l)));
        }
        avoid.canonicalize();
        miss += p * avoid;
    }
    Rational r = 1 - miss;
    r.canonicalize();
    return r;
}

Rational tabular_classical_value(const TabularGame &g, std::uint64_t cap) {
    if (g.num_x == 0 || g.num_y == 0 || g.num_a == 0 || g.num_b == 0 || !g.win) {
        throw InputError("tabular game needs non-empty question and answer sets and a predicate");
    }
    if (g.prob.size() != g.num_x * g.num_y) {
        throw InputError("tabular game distribution has the wrong size");
    }
    const std::uint64_t count = checked_pow(g.num_a, g.num_x, cap, "tabular classical value");
    Rational best = -1;
    std::vector<std::size_t> sigma(g.num_x, 0);
    for (std::uint64_t it = 0; it < count; it++) {
        std::uint64_t rem = it;
        for (std::size_t x = g.num_x; x-- > 0;) {
            sigma[x] = rem % g.num_a;
            rem /= g.num_a;
        }
        Rational v = 0;
        for (std::size_t y = 0; y < g.num_y; y++) {
            Rational top = 0;
            for (std::size_t b = 0; b < g.num_b; b++) {
                Rational s = 0;
                for (std::size_t x = 0; x < g.num_x; x++) {
                    const Rational &p = g.prob[x * g.num_y + y];
                    if (p != 0 && g.win(x, y, sigma[x], b)) {
                        s += p;
                    }
                }
                if (s > top) {
                    top = s;
                }
            }
            v += top;
        }
        if (v > best) {
            best = v;
        }
    }
    best.canonicalize();
    return best;
}

}  // namespace qfree
