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

#ifndef QFREE_CSP_H
#define QFREE_CSP_H

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qfree {

/// A 3-CNF formula. Literals are signed 1-based variable indices; a negative
/// literal is the negation of its variable.
struct SatInstance {
    int num_vars = 0;
    std::vector<std::array<int, 3>> clauses;

    /// Throws InputError on out-of-range literals or a repeated variable in a clause.
    void validate() const;
    bool satisfied_by(const std::vector<bool> &assignment) const;
};

/// Parses DIMACS CNF restricted to 3-literal clauses. Errors name the offending line.
SatInstance parse_dimacs(std::istream &in);
SatInstance parse_dimacs_string(const std::string &text);

/// Undirected edge stored with u < v. Relation lookups use colors in (u, v) order.
struct Edge {
    int u = 0;
    int v = 0;
    bool contains(int w) const {
        return u == w || v == w;
    }
    bool operator==(const Edge &) const = default;
};

/// Vertex colors, 1-based in [K], indexed by vertex id (0-based).
struct Coloring {
    std::vector<int> colors;
    bool operator==(const Coloring &) const = default;
};

/// Generalized K-coloring instance: graph plus a per-edge allowed-color relation.
class KcolInstance {
   public:
    KcolInstance() = default;

    /// `allowed` is indexed [edge][c1 - 1][c2 - 1] flattened, one byte per entry.
    KcolInstance(int num_vertices, std::vector<Edge> edges, int num_colors, std::vector<std::uint8_t> allowed);

    /// Every edge gets the relation c1 != c2.
    static KcolInstance inequality(int num_vertices, std::vector<Edge> edges, int num_colors);

    int num_vertices() const {
        return n_;
    }
    std::size_t num_edges() const {
        return edges_.size();
    }
    int num_colors() const {
        return k_;
    }
    const std::vector<Edge> &edges() const {
        return edges_;
    }
    const Edge &edge(std::size_t e) const {
        return edges_[e];
    }

    /// R(e, c1, c2) with colors in endpoint order (u, v), both 1-based.
    bool allowed(std::size_t e, int c1, int c2) const {
        return allowed_[(e * k_ + (c1 - 1)) * k_ + (c2 - 1)] != 0;
    }
    void set_allowed(std::size_t e, int c1, int c2, bool value);

    bool operator==(const KcolInstance &) const = default;

   private:
    int n_ = 0;
    int k_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint8_t> allowed_;
};

/// Gadget reduction: variables become vertices 0..num_vars-1, clause j becomes
/// vertex num_vars + j, and each (clause, member variable) pair becomes an edge.
/// K = 7; a clause color enumerates the clause's satisfying literal-value
/// triples in lexicographic order (color c <-> bits of c, first literal most
/// significant). Variable color 1 = false, 2 = true, 3..7 violate every edge.
KcolInstance reduce_3sat_to_kcol(const SatInstance &sat);

/// Coloring of the reduced instance induced by a variable assignment
/// (assignment[i] is the value of variable i + 1). Requires every clause satisfied.
Coloring induced_coloring(const SatInstance &sat, const std::vector<bool> &assignment);

std::size_t count_violated_edges(const KcolInstance &inst, const Coloring &c);

inline constexpr std::uint64_t kDefaultColoringCap = 100'000'000;

/// Lexicographically first coloring with no violated edge, or nullopt.
/// Throws CapError when K^n exceeds `cap`.
std::optional<Coloring> is_colorable(const KcolInstance &inst, std::uint64_t cap = kDefaultColoringCap);

/// Lexicographically first coloring minimizing violated edges.
struct BestColoring {
    Coloring coloring;
    std::size_t violated = 0;
};
BestColoring min_violation_coloring(const KcolInstance &inst, std::uint64_t cap = kDefaultColoringCap);

/// Convenience graphs used by tests and the CLI.
KcolInstance cycle_instance(int n, int num_colors);
KcolInstance triangle_instance(int num_colors);

}  // namespace qfree

#endif
