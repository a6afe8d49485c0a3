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

#include "qfree/bounds.h"

#include <gtest/gtest.h>

#include <cmath>

#include "qfree/common.h"

using namespace qfree;

namespace {

/// Classical value straight from the spec: every pair of answer functions.
Rational spec_value(const GameSpec &g) {
    const std::uint64_t nq = std::uint64_t{1} << g.q;
    const std::uint64_t na = std::uint64_t{1} << g.a;
    std::uint64_t strategies = 1;
    for (std::uint64_t i = 0; i < nq; i++) {
        strategies *= na;
    }
    Rational best = 0;
    for (std::uint64_t sa = 0; sa < strategies; sa++) {
        for (std::uint64_t sb = 0; sb < strategies; sb++) {
            std::uint64_t wins = 0;
            for (std::uint64_t s = 0; s < (std::uint64_t{1} << g.r); s++) {
                const auto [x, y] = g.sampler(s);
                std::uint64_t ax = sa;
                for (std::uint64_t i = 0; i < x; i++) {
                    ax /= na;
                }
                std::uint64_t by = sb;
                for (std::uint64_t i = 0; i < y; i++) {
                    by /= na;
                }
                wins += g.decider(x, y, ax % na, by % na);
            }
            Rational v(static_cast<long>(wins), static_cast<long>(std::uint64_t{1} << g.r));
            v.canonicalize();
            best = std::max(best, v);
        }
    }
    return best;
}

GameSpec chsh_spec() {
    GameSpec g;
    g.r = 2;
    g.q = 1;
    g.a = 1;
    g.sampler = [](std::uint64_t s) { return std::pair<std::uint64_t, std::uint64_t>{s >> 1, s & 1}; };
    g.decider = [](std::uint64_t x, std::uint64_t y, std::uint64_t a, std::uint64_t b) { return (a ^ b) == (x & y); };
    return g;
}

}  // namespace

TEST(bounds, toy_table_sizes) {
    EXPECT_EQ(table_bit_size(1, 1, 1, false), 64u);
    EXPECT_EQ(table_bit_size(1, 1, 1, true), 16u);
    EXPECT_EQ(table_bit_size(2, 1, 3, false), 8u * 64u);
    EXPECT_THROW(table_bit_size(20, 20, 1, false), CapError);
    for (const auto &name : builtin_game_names()) {
        for (bool gapless : {false, true}) {
            GameSpec g = builtin_game_spec(name);
            g.gapless = gapless;
            const GameTable t = extract_game_table(g, 1);
            const auto bytes = serialize_table(t);
            EXPECT_EQ(payload_bits(bytes), gapless ? 16u : 64u);
            EXPECT_EQ(bytes.size(), kTableHeaderBytes + (gapless ? 2u : 8u));
            EXPECT_EQ(deserialize_table(bytes), table_image(t));
        }
    }
    EXPECT_THROW(builtin_game_spec("toy-nope"), InputError);
}

TEST(bounds, truncation_and_saturation) {
    const GameTable eq = extract_game_table(builtin_game_spec("toy-equal"), 1);
    // p(0, 0) = 1/2 with 3 bits -> 4; p(0, 1) = 0.
    EXPECT_EQ(eq.truncated(0, 0), 4u);
    EXPECT_EQ(eq.truncated(0, 1), 0u);
    GameSpec one = builtin_game_spec("toy-equal");
    one.sampler = [](std::uint64_t) { return std::pair<std::uint64_t, std::uint64_t>{1, 0}; };
    const GameTable sat = extract_game_table(one, 1);
    EXPECT_EQ(sat.probability(1, 0), Rational(1));
    EXPECT_EQ(sat.truncated(1, 0), 7u);
}

TEST(bounds, serialization_rejects_corruption) {
    const auto bytes = serialize_table(extract_game_table(builtin_game_spec("toy-half"), 2));
    auto bad = bytes;
    bad[0] = 'X';
    EXPECT_THROW(deserialize_table(bad), InputError);
    auto short_bytes = bytes;
    short_bytes.pop_back();
    EXPECT_THROW(deserialize_table(short_bytes), InputError);
    auto long_bytes = bytes;
    long_bytes.push_back(0);
    EXPECT_THROW(deserialize_table(long_bytes), InputError);
    auto version = bytes;
    version[4] = 9;
    EXPECT_THROW(deserialize_table(version), InputError);
}

TEST(bounds, payload_sizes_and_padding) {
    EXPECT_EQ(payload_bits(serialize_table(extract_game_table(chsh_spec(), 2))), 80u);
    EXPECT_EQ(payload_bits(serialize_table(extract_game_table(chsh_spec(), 0))), 48u);
    GameSpec tiny;
    tiny.r = 1;
    tiny.sampler = [](std::uint64_t) { return std::pair<std::uint64_t, std::uint64_t>{0, 0}; };
    tiny.decider = [](std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t) { return true; };
    auto bytes = serialize_table(extract_game_table(tiny, 2));
    EXPECT_EQ(payload_bits(bytes), 3u);
    ASSERT_EQ(bytes.size(), kTableHeaderBytes + 1);
    EXPECT_NO_THROW(deserialize_table(bytes));
    bytes.back() |= 1;
    EXPECT_THROW(deserialize_table(bytes), InputError);
}

TEST(bounds, classical_value_matches_spec_enumeration) {
    for (const auto &name : builtin_game_names()) {
        const GameSpec g = builtin_game_spec(name);
        EXPECT_EQ(table_classical_value(extract_game_table(g, 1)), spec_value(g)) << name;
    }
    EXPECT_EQ(table_classical_value(extract_game_table(chsh_spec(), 1)), Rational(3, 4));
    EXPECT_EQ(spec_value(chsh_spec()), Rational(3, 4));
}

TEST(bounds, extraction_is_thread_independent) {
    const GameSpec g = chsh_spec();
    const auto a = serialize_table(extract_game_table(g, 2, 1));
    const auto b = serialize_table(extract_game_table(g, 2, 4));
    EXPECT_EQ(a, b);
}

TEST(bounds, advice_reproduces_value_bits) {
    std::vector<GameSpec> games;
    for (const auto &n : builtin_game_names()) {
        games.push_back(builtin_game_spec(n));
    }
    const AdviceString adv = build_advice(games, 1);
    EXPECT_EQ(adv.size(), 2u);
    EXPECT_TRUE(decide_with_advice(builtin_game_spec("toy-equal"), 1, adv));
    EXPECT_FALSE(decide_with_advice(builtin_game_spec("toy-half"), 1, adv));
    EXPECT_THROW(decide_with_advice(chsh_spec(), 1, adv), InputError);
}

TEST(bounds, promise_gap) {
    const GameTable t = extract_game_table(chsh_spec(), 1);
    EXPECT_THROW(value_bit(t), InputError);
    GameSpec g = chsh_spec();
    g.gapless = true;
    EXPECT_FALSE(value_bit(extract_game_table(g, 1)));
}

TEST(bounds, dtime_advice_bounds) {
    const auto b = dtime_advice_bounds(1, 1, 1, 10);
    EXPECT_EQ(b.h, BigInt(2 * 16 * 10));
    EXPECT_EQ(b.g, BigInt(64));
    const auto bl = dtime_advice_bounds(3, 2, 2, 1, 1, true);
    EXPECT_EQ(bl.g, BigInt(256));
}

TEST(bounds, gapless_ledger) {
    const LedgerConfig cfg;
    EXPECT_EQ(cfg.q0_gapless(), 27u);
    // Direct scan for the largest l with ceil(2 log2 l + 17) >= l.
    std::uint64_t q0 = 0;
    for (std::uint64_t l = 1; l < 10000; l++) {
        if (std::ceil(2 * std::log2(static_cast<double>(l)) + 17 - 1e-12) >= static_cast<double>(l)) {
            q0 = l;
        }
    }
    EXPECT_EQ(q0, 27u);
    const Trajectory t = gapless_recursion(1e6L, cfg);
    EXPECT_EQ(t.steps, (std::vector<std::uint64_t>{57, 29, 27}));
    EXPECT_EQ(t.q0, 27u);
    EXPECT_EQ(answer_length_accounting(100, t, LedgerMode::kGapless, cfg), 100 + 58 + 30 + 28);
    EXPECT_TRUE(gapless_recursion(20, cfg).steps.empty());
}

TEST(bounds, gapless_iterations_stay_below_three_log_star) {
    const LedgerConfig cfg;
    for (int e = 4; e <= 64; e++) {
        const long double l0 = std::ldexp(1.0L, e);
        EXPECT_LE(gapless_recursion(l0, cfg).iterations(), 3u * log_star(l0)) << e;
    }
}

TEST(bounds, gapped_ledger) {
    LedgerConfig cfg;
    EXPECT_EQ(cfg.q0_gapped(), 81u);
    std::uint64_t q0 = 0;
    for (std::uint64_t l = 2; l < 100000; l++) {
        const double lg = std::log2(static_cast<double>(l));
        if (std::ceil(2 * lg * lg - 1e-9) >= static_cast<double>(l)) {
            q0 = l;
        }
    }
    EXPECT_EQ(q0, 81u);
    const Trajectory t = gapped_recursion(std::ldexp(1.0L, 20), cfg);
    EXPECT_EQ(t.steps, (std::vector<std::uint64_t>{800, 187, 114, 94, 86, 83, 82, 81}));
    const double g = minimal_gapped_g(cfg);
    EXPECT_GT(g, 0);
    cfg.G = g;
    for (int e = 5; e <= 64; e++) {
        const Trajectory te = gapped_recursion(std::ldexp(1.0L, e), cfg);
        EXPECT_TRUE(te.bound_checked);
        EXPECT_TRUE(te.bound_holds) << e;
    }
    // Gapped answer length: a_{i+1} = (a_i + l_i + 1) log2(l_i) over pre-step lengths.
    const Trajectory small = gapped_recursion(128, LedgerConfig{});
    long double a = 3;
    long double l = 128;
    for (auto next : small.steps) {
        a = (a + l + 1) * std::log2(l);
        l = static_cast<long double>(next);
    }
    EXPECT_NEAR(static_cast<double>(answer_length_accounting(3, small, LedgerMode::kGapped, LedgerConfig{})),
                static_cast<double>(a), 1e-6 * static_cast<double>(a));
}

TEST(bounds, ledger_validation) {
    LedgerConfig c;
    c.C = -1;
    EXPECT_THROW(c.validate(), InputError);
    LedgerConfig g;
    g.G = 0;
    EXPECT_THROW(g.validate(), InputError);
    EXPECT_THROW(gapless_recursion(0.5L, LedgerConfig{}), InputError);
    EXPECT_THROW(triple_log2(4), InputError);
}

TEST(bounds, log_star_and_repetitions) {
    EXPECT_EQ(log_star(1), 0u);
    EXPECT_EQ(log_star(2), 1u);
    EXPECT_EQ(log_star(4), 2u);
    EXPECT_EQ(log_star(16), 3u);
    EXPECT_EQ(log_star(65536), 4u);
    EXPECT_EQ(log_star(1e6L), 5u);
    EXPECT_EQ(repetition_count(0.1, 1, 1), 14u);
    EXPECT_EQ(repetition_count(0.1, 1, 1, true), 20u);
    EXPECT_EQ(repetition_count(0.5, 2, 2), 3u);
    EXPECT_THROW(repetition_count(0, 1, 1), InputError);
}

TEST(bounds, lower_bound_margin) {
    std::vector<std::uint64_t> ns;
    for (unsigned e = 1; e <= 32; e++) {
        ns.push_back(std::uint64_t{1} << e);
    }
    const MarginReport r = lower_bound_margin(0.4, 0.9, 0.05, 1, ns);
    EXPECT_EQ(r.n0, 1310725u);
    for (const auto &row : r.rows) {
        EXPECT_EQ(row.dominates, row.left <= row.right);
        if (row.n >= r.n0) {
            EXPECT_TRUE(row.dominates) << row.n;
        }
    }
    EXPECT_EQ(margin_qa(1310725, 0.4), 8u);
    EXPECT_EQ(margin_qa(std::uint64_t{1} << 30, 0.4), 12u);
    EXPECT_THROW(lower_bound_margin(0.6, 0.9, 0.05, 1, ns), InputError);
    EXPECT_THROW(lower_bound_margin(0.4, 0.7, 0.05, 1, ns), InputError);
    EXPECT_THROW(lower_bound_margin(0.4, 0.9, 0.2, 1, ns), InputError);
}
