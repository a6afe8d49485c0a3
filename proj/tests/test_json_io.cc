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

#include "qfree/json_io.h"

#include <gtest/gtest.h>

#include "qfree/common.h"

using namespace qfree;

TEST(json_io, instance_round_trip) {
    const KcolInstance a = reduce_3sat_to_kcol(parse_dimacs_string("p cnf 3 2\n1 -2 3 0\n-1 2 3 0\n"));
    const json j = kcol_to_json(a);
    EXPECT_EQ(j["n"], 5);
    EXPECT_EQ(j["K"], 7);
    EXPECT_EQ(kcol_from_json(j), a);
    EXPECT_EQ(kcol_from_json(parse_json(j.dump(), "x")), a);
}

TEST(json_io, instance_errors) {
    EXPECT_THROW(parse_json("{", "broken"), InputError);
    EXPECT_THROW(kcol_from_json(parse_json(R"({"n": 2, "K": 2, "edges": [[0, 1]]})", "x")), InputError);
    EXPECT_THROW(kcol_from_json(parse_json(R"({"n": 2, "K": 2, "edges": [[0, 1]], "R": [[0, 3, 1]]})", "x")),
                 InputError);
    EXPECT_THROW(kcol_from_json(parse_json(R"({"n": 2, "K": 2, "edges": [[0, 5]], "R": []})", "x")), InputError);
    EXPECT_THROW(kcol_from_json(parse_json(R"({"n": "2", "K": 2, "edges": [], "R": []})", "x")), InputError);
    const KcolInstance rev = kcol_from_json(parse_json(R"({"n": 2, "K": 2, "edges": [[1, 0]], "R": [[0, 1, 2]]})", "x"));
    EXPECT_EQ(rev.edge(0), (Edge{0, 1}));
}

TEST(json_io, state_round_trip) {
    const RegisterLayout l = RegisterLayout::plain({2, 2});
    const StateVector s(l, {0.6, cplx(0, 0.8), 0, 0});
    const json j = state_to_json(s);
    EXPECT_EQ(j.size(), 2u);
    const StateVector t = state_from_json(j, l);
    EXPECT_EQ(t[1], s[1]);
    EXPECT_THROW(state_from_json(parse_json("[[9, 1, 0]]", "x"), l), InputError);
    EXPECT_THROW(state_from_json(parse_json("[[0, 0.5, 0]]", "x"), l), InputError);
}

TEST(json_io, probabilities_are_exact) {
    EXPECT_EQ(rational_from_json(parse_json("0.1", "x")), Rational(1, 10));
    EXPECT_EQ(rational_from_json(parse_json("\"2/3\"", "x")), Rational(2, 3));
    EXPECT_EQ(rational_from_json(parse_json("1", "x")), Rational(1));
    EXPECT_THROW(rational_from_json(parse_json("null", "x")), InputError);
    const json r = rational_to_json(Rational(6, 8));
    EXPECT_EQ(r["num"], "3");
    EXPECT_EQ(r["den"], "4");
}

TEST(json_io, game_requests) {
    const std::string inst = R"({"n": 3, "K": 2, "edges": [[0, 1], [0, 2], [1, 2]],
        "R": [[0, 1, 2], [0, 2, 1], [1, 1, 2], [1, 2, 1], [2, 1, 2], [2, 2, 1]]})";
    const GameRequest u = game_request_from_json(parse_json(R"({"instance": )" + inst + R"(, "k": 1, "l": 1})", "x"));
    EXPECT_EQ(u.dist.alice.support().size(), 3u);
    const GameRequest d = game_request_from_json(parse_json(
        R"({"instance": )" + inst +
            R"(, "k": 1, "l": 1, "distribution": {"alice": [[[0], "1/2"], [[1], 0.5]], "bob": [[[2], 1]]}})",
        "x"));
    EXPECT_EQ(d.dist.alice.exact_probs()[0], Rational(1, 2));
    const GameRequest m = game_request_from_json(parse_json(
        R"({"instance": )" + inst + R"(, "k": 2, "l": 1, "mixture": {
            "alice": {"terms": [{"T": [0], "weight": "3/4", "junk": [[[1], 1]]}], "error": [[[2, 2], "1/4"]]},
            "bob": {"terms": [{"T": [0], "weight": 1, "junk": [[[], 1]]}]}}, "restrict": true})",
        "x"));
    EXPECT_TRUE(m.restricted);
    EXPECT_EQ(m.dist.alice.support().size(), 3u);
    EXPECT_THROW(game_request_from_json(parse_json(R"({"instance": )" + inst + R"(, "k": 1, "l": 1,
        "distribution": {"alice": [[[0], 0.5]], "bob": [[[2], 1]]}})",
                                                   "x")),
                 InputError);
}

TEST(json_io, ledger_config) {
    const LedgerConfig c = ledger_config_from_json(parse_json(R"({"log2_X_MS": 10, "C": 2, "G": 3.5})", "x"));
    EXPECT_EQ(c.G.value(), 3.5);
    EXPECT_THROW(ledger_config_from_json(parse_json(R"({"log2_XMS": 10})", "x")), InputError);
    EXPECT_THROW(ledger_config_from_json(parse_json(R"({"C": "two"})", "x")), InputError);
    EXPECT_EQ(ledger_config_to_json(LedgerConfig{})["Q0_gapless"], 27);
}

TEST(json_io, game_spec) {
    const GameSpec g = game_spec_from_json(parse_json(
        R"({"r": 1, "q": 1, "a": 1, "samples": [[0, 0], [1, 1]], "accept": [[0,0,0,0],[0,0,1,1],[0,1,0,0],[0,1,1,1],[1,0,0,0],[1,0,1,1],[1,1,0,0],[1,1,1,1]]})",
        "x"));
    const GameSpec b = builtin_game_spec("toy-equal");
    EXPECT_EQ(serialize_table(extract_game_table(g, 1)), serialize_table(extract_game_table(b, 1)));
    EXPECT_THROW(game_spec_from_json(parse_json(R"({"r": 1, "q": 1, "a": 1, "samples": [[0, 0]], "accept": []})", "x")),
                 InputError);
}
