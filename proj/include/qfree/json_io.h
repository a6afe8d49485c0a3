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

#ifndef QFREE_JSON_IO_H
#define QFREE_JSON_IO_H

#include <map>
#include <string>

#include "json.hpp"
#include "qfree/analysis.h"
#include "qfree/bounds.h"
#include "qfree/csp.h"
#include "qfree/games.h"
#include "qfree/quantum.h"

namespace qfree {

using json = nlohmann::ordered_json;

/// Parses text, throwing InputError with the parser's message on failure.
json parse_json(const std::string &text, const std::string &what);

/// {"n": .., "edges": [[u, v], ..], "K": .., "R": [[e, c1, c2], ..]} with R
/// listing the allowed triples.
json kcol_to_json(const KcolInstance &inst);
KcolInstance kcol_from_json(const json &j);

/// [[index, re, im], ..] over amplitudes with modulus above 1e-14.
json state_to_json(const StateVector &s);
StateVector state_from_json(const json &j, const RegisterLayout &layout);

/// A probability given as a JSON number, an integer, or a string "p/q" or decimal.
Rational rational_from_json(const json &j);
json rational_to_json(const Rational &q);

struct GameRequest {
    ConsistencyGameSpec spec;
    QuestionDistribution dist;
    bool restricted = false;
};

/// {"instance": {..}, "k": .., "l": .., "model": "tuple"|"subset",
///  optional "distribution": {"alice": [[question, p], ..], "bob": [..]},
///  optional "mixture": {"alice": mixture, "bob": mixture}, optional "restrict": bool}
/// where mixture = {"terms": [{"T": [..], "weight": p, "junk": [[z, p], ..]}], "error": [[q, p], ..]}.
GameRequest game_request_from_json(const json &j);
json game_report_to_json(const GameValueReport &r);

struct DecomposeRequest {
    std::size_t alphabet = 0;
    std::size_t k = 0;
    std::map<Outcome, Rational> mu;
};

/// {"Q": .., "k": .., "probs": [[outcome, p], ..]}
DecomposeRequest decompose_request_from_json(const json &j);
json tv_result_to_json(const TvResult &r);

/// {"builtin": "toy-equal"} or {"r": .., "q": .., "a": .., "samples": [[x, y] per seed],
///  "accept": [[x, y, aA, aB], ..], "gapless": bool}
GameSpec game_spec_from_json(const json &j);

/// Any subset of the LedgerConfig field names.
LedgerConfig ledger_config_from_json(const json &j);
json ledger_config_to_json(const LedgerConfig &c);

}  // namespace qfree

#endif
