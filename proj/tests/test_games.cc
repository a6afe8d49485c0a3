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

#include <gtest/gtest.h>

#include <random>

#include "qfree/common.h"
#include "test_support.h"

using namespace qfree;
using qfree::testing::brute_force_game_value;
using qfree::testing::random_instance;
using qfree::testing::random_mixture;
using qfree::testing::random_weight;

namespace {

ConsistencyGameSpec spec_of(const KcolInstance &inst, std::size_t k, std::size_t l,
                            QuestionModel model = QuestionModel::kTuple) {
    ConsistencyGameSpec s;
    s.instance = inst;
    s.k = k;
    s.l = l;
    s.model = model;
    s.validate();
    return s;
}

std::map<Question, Rational> random_factor(std::mt19937_64 &rng, std::size_t alphabet, std::size_t len) {
    std::map<Question, Rational> m;
    Rational total = 0;
    std::size_t count = 1;
    for (std::size_t i = 0; i < len; i++) {
        count *= alphabet;
    }
    for (std::size_t c = 0; c < count; c++) {
        if (rng() % 3 == 0) {
            continue;
        }
        Question q;
        std::size_t x = c;
        for (std::size_t i = 0; i < len; i++) {
            q.insert(q.begin(), x % alphabet);
            x /= alphabet;
        }
        m[q] = random_weight(rng);
        total += m[q];
    }
    if (m.empty()) {
        m[Question(len, 0)] = 1;
        total = 1;
    }
    for (auto &[q, p] : m) {
        p /= total;
    }
    return m;
}

}  // namespace

TEST(games, triangle_value_is_eight_ninths) {
    const auto s = spec_of(triangle_instance(2), 1, 1);
    const auto d = QuestionDistribution::uniform(s);
    const GameValueReport r = game_value(s, d);
    ASSERT_TRUE(r.exact);
    EXPECT_EQ(r.value, Rational(8, 9));
    EXPECT_EQ(brute_force_game_value(s, d), Rational(8, 9));
    EXPECT_EQ(r.error_bound, 0);
}

TEST(games, colorable_instances_have_value_one) {
    const auto s = spec_of(cycle_instance(4, 2), 1, 2);
    const GameValueReport r = game_value(s, QuestionDistribution::uniform(s));
    EXPECT_EQ(r.value, Rational(1));
}

TEST(games, value_matches_brute_force_on_random_games) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; trial++) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const KcolInstance inst = random_instance(rng, n, 1 + rng() % 3, 2);
        const std::size_t k = 1;
        const std::size_t l = n == 2 ? 1 + rng() % 2 : 1;
        const auto s = spec_of(inst, k, l);
        QuestionDistribution d;
        d.alice = Factor::exact(random_factor(rng, inst.num_edges(), k));
        d.bob = Factor::exact(random_factor(rng, static_cast<std::size_t>(n), l));
        d.validate(s);
        const GameValueReport r = game_value(s, d);
        ASSERT_TRUE(r.exact);
        EXPECT_EQ(r.value, brute_force_game_value(s, d)) << "trial " << trial;
        // The witness attains the value.
        Rational v = 0;
        for (std::size_t i = 0; i < d.alice.support().size(); i++) {
            for (std::size_t j = 0; j < d.bob.support().size(); j++) {
                const auto &x = d.alice.support()[i];
                const auto &y = d.bob.support()[j];
                if (consistency_win(inst, x, y, r.witness.alice.at(x), r.witness.bob.at(y))) {
                    v += d.alice.exact_probs()[i] * d.bob.exact_probs()[j];
                }
            }
        }
        EXPECT_EQ(v, r.value);
    }
}

TEST(games, real_factors_bound_their_error) {
    std::mt19937_64 rng(32);
    const KcolInstance inst = triangle_instance(2);
    const auto s = spec_of(inst, 1, 1);
    const auto pa = random_factor(rng, 3, 1);
    const auto pb = random_factor(rng, 3, 1);
    QuestionDistribution exact;
    exact.alice = Factor::exact(pa);
    exact.bob = Factor::exact(pb);
    std::map<Question, double> ra;
    std::map<Question, double> rb;
    for (const auto &[q, p] : pa) {
        ra[q] = to_double(p);
    }
    for (const auto &[q, p] : pb) {
        rb[q] = to_double(p);
    }
    QuestionDistribution real;
    real.alice = Factor::real(ra);
    real.bob = Factor::real(rb);
    const auto re = game_value(s, real);
    EXPECT_FALSE(re.exact);
    EXPECT_NEAR(re.value_real, to_double(game_value(s, exact).value), re.error_bound + 1e-15);
    EXPECT_LT(re.error_bound, 1e-12);
}

TEST(games, cap_is_enforced) {
    const auto s = spec_of(cycle_instance(6, 2), 2, 2);
    EXPECT_THROW(game_value(s, QuestionDistribution::uniform(s), 1000), CapError);
}

TEST(games, discarding_questions_never_helps) {
    std::mt19937_64 rng(33);
    int checked = 0;
    for (int trial = 0; trial < 12; trial++) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const KcolInstance inst = random_instance(rng, n, 1 + rng() % 4, 2);
        const std::size_t k = 1 + rng() % 2;
        const std::size_t l = 1 + rng() % 2;
        const auto s = spec_of(inst, k, l);
        const auto ma = random_mixture(rng, k, inst.num_edges(), 1, 1);
        const auto mb = random_mixture(rng, l, static_cast<std::size_t>(n), 1, 2);
        const auto d = QuestionDistribution::from_mixtures(ma, mb);
        const SubgameCheck c = induced_subgame_value_check(s, d, 1, 1);
        EXPECT_TRUE(c.holds) << to_string(c.lhs.value) << " > " << to_string(c.rhs.value);
        EXPECT_LE(c.lhs.value, c.rhs.value);
        checked++;
    }
    EXPECT_EQ(checked, 12);
}

TEST(games, restriction_drops_error_terms) {
    const KcolInstance inst = cycle_instance(4, 2);
    const auto s = spec_of(inst, 1, 1);
    auto ma = MixtureAnnotation::pure_uniform(1, 4);
    ma.terms[0].weight = Rational(3, 4);
    ma.error[{0}] = Rational(1, 4);
    const auto mb = MixtureAnnotation::pure_uniform(1, 4);
    const auto d = QuestionDistribution::from_mixtures(ma, mb);
    const auto r = restrict_distribution(d);
    EXPECT_NEAR(r.discarded_mass, 0.25, 1e-15);
    for (std::size_t i = 0; i < r.alice.support().size(); i++) {
        EXPECT_EQ(r.alice.exact_probs()[i], Rational(1, 4));
    }
    r.validate(s);
}

TEST(games, birthday_collision) {
    const KcolInstance c4 = cycle_instance(4, 2);
    EXPECT_EQ(birthday_collision_prob(c4, 1, 1), Rational(1, 2));
    // 1 - P(no sampled vertex touches either sampled edge), by enumeration.
    Rational miss = 0;
    for (std::size_t e = 0; e < 4; e++) {
        for (std::size_t v1 = 0; v1 < 4; v1++) {
            for (std::size_t v2 = 0; v2 < 4; v2++) {
                const Edge &ed = c4.edge(e);
                if (!ed.contains(static_cast<int>(v1)) && !ed.contains(static_cast<int>(v2))) {
                    miss += Rational(1, 64);
                }
            }
        }
    }
    EXPECT_EQ(birthday_collision_prob(c4, 1, 2), 1 - miss);
    EXPECT_EQ(birthday_collision_prob(c4, 1, 4, QuestionModel::kSubset), Rational(1));
    EXPECT_LT(birthday_collision_prob(c4, 1, 4, QuestionModel::kTuple), Rational(1));
}

TEST(games, measured_distribution_of_honest_witnesses_is_uniform) {
    const KcolInstance c4 = cycle_instance(4, 2);
    const ProtocolParams p(c4, 2, Rational(1, 2));
    const WitnessPair w = honest_witnesses(p, Coloring{{1, 2, 1, 2}});
    const QuestionDistribution d = measured_question_distribution(w, p);
    ASSERT_TRUE(d.alice.is_exact());
    EXPECT_EQ(d.alice.support().size(), 16u);
    for (const auto &pr : d.alice.exact_probs()) {
        EXPECT_EQ(pr, Rational(1, 16));
    }
    const ProtocolParams p1(c4, 1, Rational(1, 2));
    const auto s = spec_of(c4, 1, 1);
    EXPECT_EQ(game_value(s, measured_question_distribution(honest_witnesses(p1, Coloring{{1, 2, 1, 2}}), p1)).value,
              Rational(1));
}

TEST(games, chsh_classical_value) {
    TabularGame g;
    g.num_x = g.num_y = g.num_a = g.num_b = 2;
    g.prob.assign(4, Rational(1, 4));
    g.win = [](std::size_t x, std::size_t y, std::size_t a, std::size_t b) { return ((a ^ b) == (x & y)); };
    EXPECT_EQ(tabular_classical_value(g), Rational(3, 4));
}

TEST(games, spec_validation) {
    ConsistencyGameSpec s;
    s.instance = cycle_instance(4, 2);
    s.k = 0;
    EXPECT_THROW(s.validate(), InputError);
    s.k = 5;
    s.model = QuestionModel::kSubset;
    EXPECT_THROW(s.validate(), InputError);
    s.k = 2;
    s.validate();
    EXPECT_THROW(s.check_alice_question({1, 0}), InputError);
    EXPECT_THROW(s.check_alice_question({1}), InputError);
    EXPECT_THROW(s.check_bob_question({7}), InputError);
    EXPECT_THROW(parse_model("pairs"), InputError);
    EXPECT_EQ(parse_model(model_name(QuestionModel::kSubset)), QuestionModel::kSubset);
}
