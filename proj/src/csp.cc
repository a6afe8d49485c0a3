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

#include "qfree/csp.h"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <set>
#include <sstream>

#include "qfree/common.h"

namespace qfree {

void SatInstance::validate() const {
    if (num_vars < 0) {
        throw InputError("negative variable count");
    }
    for (std::size_t j = 0; j < clauses.size(); j++) {
        const auto &cl = clauses[j];
        for (int a = 0; a < 3; a++) {
            if (cl[a] == 0 || std::abs(cl[a]) > num_vars) {
                throw InputError("clause " + std::to_string(j) + " references variable outside [1, " +
                                 std::to_string(num_vars) + "]");
            }
            for (int b = 0; b < a; b++) {
                if (std::abs(cl[a]) == std::abs(cl[b])) {
                    throw InputError("clause " + std::to_string(j) + " repeats variable " +
                                     std::to_string(std::abs(cl[a])));
                }
            }
        }
    }
}

bool SatInstance::satisfied_by(const std::vector<bool> &assignment) const {
    for (const auto &cl : clauses) {
        bool sat = false;
        for (int lit : cl) {
            bool value = assignment[std::abs(lit) - 1];
            if ((lit > 0) == value) {
                sat = true;
                break;
            }
        }
        if (!sat) {
            return false;
        }
    }
    return true;
}

SatInstance parse_dimacs(std::istream &in) {
    SatInstance out;
    bool have_header = false;
    std::size_t declared_clauses = 0;
    std::vector<int> pending;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string &msg) {
        throw InputError("DIMACS line " + std::to_string(line_no) + ": " + msg);
    };
    while (std::getline(in, line)) {
        line_no++;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == 'c' || line[first] == '%') {
            continue;
        }
        std::istringstream ls(line);
        if (line[first] == 'p') {
            std::string p, fmt;
            long long vars = -1, cls = -1;
            if (have_header || !(ls >> p >> fmt >> vars >> cls) || fmt != "cnf" || vars < 0 || cls < 0) {
                fail("malformed problem line");
            }
            std::string extra;
            if (ls >> extra) {
                fail("trailing tokens on problem line");
            }
            have_header = true;
            out.num_vars = static_cast<int>(vars);
            declared_clauses = static_cast<std::size_t>(cls);
            continue;
        }
        if (!have_header) {
            fail("clause before problem line");
        }
        std::string tok;
        while (ls >> tok) {
            char *end = nullptr;
            long v = std::strtol(tok.c_str(), &end, 10);
            if (end == tok.c_str() || *end != '\0') {
                fail("non-integer token '" + tok + "'");
            }
            if (v == 0) {
                if (pending.size() != 3) {
                    fail("clause has " + std::to_string(pending.size()) + " literals, expected 3");
                }
                std::array<int, 3> cl{pending[0], pending[1], pending[2]};
                for (int a = 0; a < 3; a++) {
                    if (std::abs(cl[a]) > out.num_vars) {
                        fail("literal " + std::to_string(cl[a]) + " exceeds declared variable count");
                    }
                    for (int b = 0; b < a; b++) {
                        if (std::abs(cl[a]) == std::abs(cl[b])) {
                            fail("clause repeats variable " + std::to_string(std::abs(cl[a])));
                        }
                    }
                }
                out.clauses.push_back(cl);
                pending.clear();
            } else {
                pending.push_back(static_cast<int>(v));
            }
        }
    }
    if (!have_header) {
        throw InputError("DIMACS: missing problem line");
    }
    if (!pending.empty()) {
        throw InputError("DIMACS line " + std::to_string(line_no) + ": unterminated clause");
    }
    if (out.clauses.size() != declared_clauses) {
        throw InputError("DIMACS: header declares " + std::to_string(declared_clauses) + " clauses, found " +
                         std::to_string(out.clauses.size()));
    }
    out.validate();
    return out;
}

SatInstance parse_dimacs_string(const std::string &text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

KcolInstance::KcolInstance(int num_vertices, std::vector<Edge> edges, int num_colors, std::vector<std::uint8_t> allowed)
    : n_(num_vertices), k_(num_colors), edges_(std::move(edges)), allowed_(std::move(allowed)) {
    if (n_ < 0) {
        throw InputError("negative vertex count");
    }
    if (k_ < 1) {
        throw InputError("instance needs at least one color");
    }
    std::set<std::pair<int, int>> seen;
    for (const auto &e : edges_) {
        if (e.u < 0 || e.v >= n_ || e.u >= n_ || e.v < 0) {
            throw InputError("edge endpoint out of range");
        }
        if (e.u == e.v) {
            throw InputError("self-loop on vertex " + std::to_string(e.u));
        }
        if (e.u > e.v) {
            throw InputError("edge endpoints must be stored as (min, max)");
        }
        if (!seen.insert({e.u, e.v}).second) {
            throw InputError("duplicate edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
        }
    }
    if (allowed_.size() != edges_.size() * static_cast<std::size_t>(k_) * k_) {
        throw InputError("relation table must have one entry per (edge, color, color)");
    }
}

KcolInstance KcolInstance::inequality(int num_vertices, std::vector<Edge> edges, int num_colors) {
    std::vector<std::uint8_t> allowed(edges.size() * num_colors * num_colors, 0);
    for (std::size_t e = 0; e < edges.size(); e++) {
        for (int a = 0; a < num_colors; a++) {
            for (int b = 0; b < num_colors; b++) {
                allowed[(e * num_colors + a) * num_colors + b] = a != b;
            }
        }
    }
    return KcolInstance(num_vertices, std::move(edges), num_colors, std::move(allowed));
}

void KcolInstance::set_allowed(std::size_t e, int c1, int c2, bool value) {
    if (e >= edges_.size() || c1 < 1 || c1 > k_ || c2 < 1 || c2 > k_) {
        throw InputError("relation index out of range");
    }
    allowed_[(e * k_ + (c1 - 1)) * k_ + (c2 - 1)] = value;
}

KcolInstance reduce_3sat_to_kcol(const SatInstance &sat) {
    sat.validate();
    constexpr int kColors = 7;
    const int n = sat.num_vars + static_cast<int>(sat.clauses.size());
    std::vector<Edge> edges;
    std::vector<std::uint8_t> allowed;
    edges.reserve(3 * sat.clauses.size());
    allowed.reserve(3 * sat.clauses.size() * kColors * kColors);
    for (std::size_t j = 0; j < sat.clauses.size(); j++) {
        const int clause_vertex = sat.num_vars + static_cast<int>(j);
        for (int pos = 0; pos < 3; pos++) {
            const int lit = sat.clauses[j][pos];
            const int var_vertex = std::abs(lit) - 1;
            edges.push_back({var_vertex, clause_vertex});
            // Endpoint order is (variable, clause) since variables come first.
            for (int cv = 1; cv <= kColors; cv++) {
                for (int cc = 1; cc <= kColors; cc++) {
                    bool ok = false;
                    if (cv <= 2) {
                        const bool literal_value = (cc >> (2 - pos)) & 1;
                        const bool var_value = (lit > 0) ? literal_value : !literal_value;
                        ok = var_value == (cv == 2);
                    }
                    allowed.push_back(ok);
                }
            }
        }
    }
    return KcolInstance(n, std::move(edges), kColors, std::move(allowed));
}

Coloring induced_coloring(const SatInstance &sat, const std::vector<bool> &assignment) {
    if (assignment.size() != static_cast<std::size_t>(sat.num_vars)) {
        throw InputError("assignment size does not match variable count");
    }
    Coloring c;
    c.colors.resize(sat.num_vars + sat.clauses.size());
    for (int i = 0; i < sat.num_vars; i++) {
        c.colors[i] = assignment[i] ? 2 : 1;
    }
    for (std::size_t j = 0; j < sat.clauses.size(); j++) {
        int idx = 0;
        for (int pos = 0; pos < 3; pos++) {
            const int lit = sat.clauses[j][pos];
            const bool value = assignment[std::abs(lit) - 1];
            idx = 2 * idx + ((lit > 0) == value ? 1 : 0);
        }
        if (idx == 0) {
            throw InputError("assignment does not satisfy clause " + std::to_string(j));
        }
        c.colors[sat.num_vars + j] = idx;
    }
    return c;
}

std::size_t count_violated_edges(const KcolInstance &inst, const Coloring &c) {
    if (c.colors.size() != static_cast<std::size_t>(inst.num_vertices())) {
        throw InputError("coloring is not total on the vertex set");
    }
    for (int col : c.colors) {
        if (col < 1 || col > inst.num_colors()) {
            throw InputError("color outside [1, K]");
        }
    }
    std::size_t bad = 0;
    for (std::size_t e = 0; e < inst.num_edges(); e++) {
        const Edge &ed = inst.edge(e);
        if (!inst.allowed(e, c.colors[ed.u], c.colors[ed.v])) {
            bad++;
        }
    }
    return bad;
}

namespace {

// For each vertex, the edges whose larger endpoint it is. When vertices are
// colored in increasing order these edges become fully assigned at that vertex.
std::vector<std::vector<std::size_t>> closing_edges(const KcolInstance &inst) {
    std::vector<std::vector<std::size_t>> by_vertex(inst.num_vertices());
    for (std::size_t e = 0; e < inst.num_edges(); e++) {
        by_vertex[inst.edge(e).v].push_back(e);
    }
    return by_vertex;
}

}  // namespace

std::optional<Coloring> is_colorable(const KcolInstance &inst, std::uint64_t cap) {
    checked_pow(inst.num_colors(), inst.num_vertices(), cap, "coloring enumeration");
    const auto closing = closing_edges(inst);
    const int n = inst.num_vertices();
    const int k = inst.num_colors();
    std::vector<int> col(n, 0);
    int v = 0;
    while (v >= 0) {
        if (v == n) {
            return Coloring{col};
        }
        col[v]++;
        if (col[v] > k) {
            col[v] = 0;
            v--;
            continue;
        }
        bool ok = true;
        for (std::size_t e : closing[v]) {
            const Edge &ed = inst.edge(e);
            if (!inst.allowed(e, col[ed.u], col[ed.v])) {
                ok = false;
                break;
            }
        }
        if (ok) {
            v++;
        }
    }
    return std::nullopt;
}

BestColoring min_violation_coloring(const KcolInstance &inst, std::uint64_t cap) {
    checked_pow(inst.num_colors(), inst.num_vertices(), cap, "coloring enumeration");
    const auto closing = closing_edges(inst);
    const int n = inst.num_vertices();
    const int k = inst.num_colors();
    BestColoring best;
    best.violated = inst.num_edges() + 1;
    std::vector<int> col(n, 0);
    std::vector<std::size_t> cost(n + 1, 0);
    int v = 0;
    while (v >= 0) {
        if (v == n) {
            if (cost[n] < best.violated) {
                best.violated = cost[n];
                best.coloring = Coloring{col};
                if (best.violated == 0) {
                    break;
                }
            }
            v--;
            continue;
        }
        col[v]++;
        if (col[v] > k) {
            col[v] = 0;
            v--;
            continue;
        }
        std::size_t add = 0;
        for (std::size_t e : closing[v]) {
            const Edge &ed = inst.edge(e);
            add += !inst.allowed(e, col[ed.u], col[ed.v]);
        }
        cost[v + 1] = cost[v] + add;
        if (cost[v + 1] < best.violated) {
            v++;
        }
    }
    return best;
}

KcolInstance cycle_instance(int n, int num_colors) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; i++) {
        int a = i;
        int b = (i + 1) % n;
        edges.push_back({std::min(a, b), std::max(a, b)});
    }
    return KcolInstance::inequality(n, std::move(edges), num_colors);
}

KcolInstance triangle_instance(int num_colors) {
    return cycle_instance(3, num_colors);
}

}  // namespace qfree
