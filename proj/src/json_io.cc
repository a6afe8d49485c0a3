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

#include <cmath>

#include "qfree/common.h"

namespace qfree {

json parse_json(const std::string &text, const std::string &what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw InputError(what + ": " + e.what());
    }
}

namespace {

const json &field(const json &j, const char *name) {
    if (!j.is_object() || !j.contains(name)) {
        throw InputError(std::string("missing field '") + name + "'");
    }
    return j.at(name);
}

template <class T>
T get_as(const json &j, const char *name) {
    try {
        return field(j, name).get<T>();
    } catch (const json::exception &e) {
        throw InputError(std::string("field '") + name + "': " + e.what());
    }
}

std::int64_t as_int(const json &j, const char *what) {
    if (!j.is_number_integer()) {
        throw InputError(std::string(what) + " must be an integer");
    }
    return j.get<std::int64_t>();
}

std::size_t as_index(const json &j, const char *what) {
    const auto v = as_int(j, what);
    if (v < 0) {
        throw InputError(std::string(what) + " must be non-negative");
    }
    return static_cast<std::size_t>(v);
}

std::vector<std::size_t> as_index_list(const json &j, const char *what) {
    if (!j.is_array()) {
        throw InputError(std::string(what) + " must be an array");
    }
    std::vector<std::size_t> out;
    for (const auto &x : j) {
        out.push_back(as_index(x, what));
    }
    return out;
}

}  // namespace

json kcol_to_json(const KcolInstance &inst) {
    json j;
    j["n"] = inst.num_vertices();
    j["edges"] = json::array();
    for (const Edge &e : inst.edges()) {
        j["edges"].push_back({e.u, e.v});
    }
    j["K"] = inst.num_colors();
    j["R"] = json::array();
    for (std::size_t e = 0; e < inst.num_edges(); e++) {
        for (int c1 = 1; c1 <= inst.num_colors(); c1++) {
            for (int c2 = 1; c2 <= inst.num_colors(); c2++) {
                if (inst.allowed(e, c1, c2)) {
                    j["R"].push_back({e, c1, c2});
                }
            }
        }
    }
    return j;
}

KcolInstance kcol_from_json(const json &j) {
    const auto n = as_int(field(j, "n"), "n");
    const auto k = as_int(field(j, "K"), "K");
    if (n < 0 || k <= 0 || n > (1 << 24) || k > 4096) {
        throw InputError("n must be non-negative and K positive, both of desk size");
    }
    std::vector<Edge> edges;
    const json &je = field(j, "edges");
    if (!je.is_array()) {
        throw InputError("edges must be an array");
    }
    for (const auto &e : je) {
        if (!e.is_array() || e.size() != 2) {
            throw InputError("each edge must be a pair [u, v]");
        }
        int u = static_cast<int>(as_int(e[0], "edge endpoint"));
        int v = static_cast<int>(as_int(e[1], "edge endpoint"));
        if (u > v) {
            std::swap(u, v);
        }
        edges.push_back({u, v});
    }
    const std::size_t m = edges.size();
    std::vector<std::uint8_t> allowed(m * static_cast<std::size_t>(k * k), 0);
    const json &jr = field(j, "R");
    if (!jr.is_array()) {
        throw InputError("R must be an array of allowed triples");
    }
    for (const auto &t : jr) {
        if (!t.is_array() || t.size() != 3) {
            throw InputError("each R entry must be a triple [e, c1, c2]");
        }
        const auto e = as_int(t[0], "R edge");
        const auto c1 = as_int(t[1], "R color");
        const auto c2 = as_int(t[2], "R color");
        if (e < 0 || static_cast<std::size_t>(e) >= m || c1 < 1 || c1 > k || c2 < 1 || c2 > k) {
            throw InputError("R entry out of range");
        }
        allowed[(static_cast<std::size_t>(e) * k + (c1 - 1)) * k + (c2 - 1)] = 1;
    }
    return KcolInstance(static_cast<int>(n), std::move(edges), static_cast<int>(k), std::move(allowed));
}

json state_to_json(const StateVector &s) {
    json j = json::array();
    for (std::size_t i = 0; i < s.dim(); i++) {
        if (std::abs(s[i]) > 1e-14) {
            j.push_back({i, s[i].real(), s[i].imag()});
        }
    }
    return j;
}

StateVector state_from_json(const json &j, const RegisterLayout &layout) {
    if (!j.is_array()) {
        throw InputError("state dump must be an array of [index, re, im]");
    }
    std::vector<cplx> amps(layout.total_dim());
    for (const auto &e : j) {
        if (!e.is_array() || e.size() != 3 || !e[1].is_number() || !e[2].is_number()) {
            throw InputError("state dump entries must be [index, re, im]");
        }
        const std::size_t i = as_index(e[0], "amplitude index");
        if (i >= amps.size()) {
            throw InputError("amplitude index out of range");
        }
        amps[i] = cplx(e[1].get<double>(), e[2].get<double>());
    }
    return StateVector(layout, std::move(amps));
}

Rational rational_from_json(const json &j) {
    if (j.is_string()) {
        return rational_from_decimal(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Rational(BigInt(j.dump()));
    }
    if (j.is_number_float()) {
        // The shortest round-trip decimal of the double, read exactly.
        return rational_from_decimal(j.dump());
    }
    throw InputError("probability must be a number or a string");
}

json rational_to_json(const Rational &q) {
    Rational c = q;
    c.canonicalize();
    return json{{"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}, {"float", to_double(c)}};
}

namespace {

std::map<Question, Rational> atom_list(const json &j, const char *what) {
    if (!j.is_array()) {
        throw InputError(std::string(what) + " must be an array of [outcome, p]");
    }
    std::map<Question, Rational> out;
    for (const auto &e : j) {
        if (!e.is_array() || e.size() != 2) {
            throw InputError(std::string(what) + " entries must be [outcome, p]");
        }
        out[as_index_list(e[0], what)] += rational_from_json(e[1]);
    }
    return out;
}

MixtureAnnotation mixture_from_json(const json &j, std::size_t k, std::size_t alphabet) {
    MixtureAnnotation m;
    m.k = k;
    m.alphabet = alphabet;
    const json &terms = field(j, "terms");
    if (!terms.is_array()) {
        throw InputError("mixture terms must be an array");
    }
    for (const auto &t : terms) {
        MixtureTerm term;
        term.uniform_coords = as_index_list(field(t, "T"), "T");
        term.weight = rational_from_json(field(t, "weight"));
        term.junk = atom_list(field(t, "junk"), "junk");
        m.terms.push_back(std::move(term));
    }
    if (j.contains("error")) {
        m.error = atom_list(j.at("error"), "error");
    }
    m.validate();
    return m;
}

}  // namespace

GameRequest game_request_from_json(const json &j) {
    GameRequest r;
    r.spec.instance = kcol_from_json(field(j, "instance"));
    r.spec.k = as_index(field(j, "k"), "k");
    r.spec.l = as_index(field(j, "l"), "l");
    r.spec.model = j.contains("model") ? parse_model(get_as<std::string>(j, "model")) : QuestionModel::kTuple;
    r.spec.validate();
    if (j.contains("distribution") && j.contains("mixture")) {
        throw InputError("give either a distribution or a mixture, not both");
    }
    if (j.contains("distribution")) {
        const json &d = j.at("distribution");
        r.dist.alice = Factor::exact(atom_list(field(d, "alice"), "alice distribution"));
        r.dist.bob = Factor::exact(atom_list(field(d, "bob"), "bob distribution"));
    } else if (j.contains("mixture")) {
        const json &d = j.at("mixture");
        r.dist = QuestionDistribution::from_mixtures(
            mixture_from_json(field(d, "alice"), r.spec.k, r.spec.instance.num_edges()),
            mixture_from_json(field(d, "bob"), r.spec.l, static_cast<std::size_t>(r.spec.instance.num_vertices())));
    } else {
        r.dist = QuestionDistribution::uniform(r.spec);
    }
    if (j.contains("restrict") && j.at("restrict").get<bool>()) {
        r.dist = restrict_distribution(r.dist, true);
        r.restricted = true;
    }
    r.dist.validate(r.spec);
    return r;
}

json game_report_to_json(const GameValueReport &r) {
    json j;
    j["exact"] = r.exact;
    if (r.exact) {
        j["value"] = rational_to_json(r.value);
    } else {
        j["value"] = json{{"float", r.value_real}};
    }
    j["error_bound"] = r.error_bound;
    j["enumerated_side"] = r.enumerated_side;
    j["strategies_enumerated"] = r.strategies_enumerated;
    json w;
    for (const auto *side : {"alice", "bob"}) {
        const auto &m = std::string(side) == "alice" ? r.witness.alice : r.witness.bob;
        json arr = json::array();
        for (const auto &[q, colors] : m) {
            arr.push_back({q, colors});
        }
        w[side] = arr;
    }
    j["witness"] = w;
    return j;
}

DecomposeRequest decompose_request_from_json(const json &j) {
    DecomposeRequest r;
    r.alphabet = as_index(field(j, "Q"), "Q");
    r.k = as_index(field(j, "k"), "k");
    r.mu = atom_list(field(j, "probs"), "probs");
    return r;
}

json tv_result_to_json(const TvResult &r) {
    json j;
    j["distance"] = r.distance;
    if (r.exact_distance) {
        j["distance_exact"] = rational_to_json(*r.exact_distance);
    }
    j["lp_rows"] = r.lp_rows;
    j["lp_cols"] = r.lp_cols;
    json terms = json::array();
    for (const auto &t : r.decomposition.terms) {
        json jt;
        jt["T"] = t.uniform_coords;
        jt["weight"] = t.weight;
        json junk = json::array();
        for (const auto &[z, p] : t.junk) {
            junk.push_back({z, p});
        }
        jt["junk"] = junk;
        terms.push_back(jt);
    }
    j["terms"] = terms;
    return j;
}

GameSpec game_spec_from_json(const json &j) {
    if (j.contains("builtin")) {
        return builtin_game_spec(get_as<std::string>(j, "builtin"));
    }
    GameSpec g;
    const auto r = as_index(field(j, "r"), "r");
    const auto q = as_index(field(j, "q"), "q");
    const auto a = as_index(field(j, "a"), "a");
    if (r > kMaxSeedBits || q > 13 || a > 13) {
        throw CapError("game spec exceeds the enumeration caps");
    }
    g.r = static_cast<std::uint32_t>(r);
    g.q = static_cast<std::uint32_t>(q);
    g.a = static_cast<std::uint32_t>(a);
    g.gapless = j.contains("gapless") && j.at("gapless").get<bool>();
    const json &samples = field(j, "samples");
    if (!samples.is_array() || samples.size() != (std::size_t{1} << r)) {
        throw InputError("samples must list one [x, y] pair per seed");
    }
    std::vector<std::pair<std::uint64_t, std::uint64_t>> table;
    for (const auto &s : samples) {
        const auto xy = as_index_list(s, "sample");
        if (xy.size() != 2) {
            throw InputError("each sample must be [x, y]");
        }
        table.emplace_back(xy[0], xy[1]);
    }
    std::vector<std::vector<std::size_t>> accept;
    for (const auto &row : field(j, "accept")) {
        auto v = as_index_list(row, "accept row");
        if (v.size() != 4) {
            throw InputError("each accept row must be [x, y, aA, aB]");
        }
        accept.push_back(std::move(v));
    }
    std::sort(accept.begin(), accept.end());
    g.sampler = [table](std::uint64_t s) { return table.at(s); };
    g.decider = [accept](std::uint64_t x, std::uint64_t y, std::uint64_t aa, std::uint64_t ab) {
        const std::vector<std::size_t> key{x, y, aa, ab};
        return std::binary_search(accept.begin(), accept.end(), key);
    };
    return g;
}

LedgerConfig ledger_config_from_json(const json &j) {
    if (!j.is_object()) {
        throw InputError("ledger config must be an object");
    }
    LedgerConfig c;
    auto num = [&](const char *name, double &dst) {
        if (j.contains(name)) {
            if (!j.at(name).is_number()) {
                throw InputError(std::string("ledger field '") + name + "' must be a number");
            }
            dst = j.at(name).get<double>();
        }
    };
    num("log2_X_MS", c.log2_x_ms);
    num("C", c.C);
    num("beta", c.beta);
    num("A", c.A);
    num("alpha", c.alpha);
    num("C_rep", c.C_rep);
    num("c_rep", c.c_rep);
    num("answer_const", c.answer_const);
    if (j.contains("G")) {
        double g = 0;
        num("G", g);
        c.G = g;
    }
    for (const auto &[key, value] : j.items()) {
        static const std::vector<std::string> known = {"log2_X_MS", "C",     "beta",  "A",           "alpha",
                                                       "C_rep",     "c_rep", "G",     "answer_const"};
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw InputError("unknown ledger field '" + key + "'");
        }
    }
    c.validate();
    return c;
}

json ledger_config_to_json(const LedgerConfig &c) {
    json j;
    j["log2_X_MS"] = c.log2_x_ms;
    j["C"] = c.C;
    j["beta"] = c.beta;
    j["A"] = c.A;
    j["alpha"] = c.alpha;
    if (c.G) {
        j["G"] = *c.G;
    }
    j["C_rep"] = c.C_rep;
    j["c_rep"] = c.c_rep;
    j["answer_const"] = c.answer_const;
    j["Q0_gapless"] = c.q0_gapless();
    j["Q0_gapped"] = c.q0_gapped();
    return j;
}

}  // namespace qfree
