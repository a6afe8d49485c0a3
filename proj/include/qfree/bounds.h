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

#ifndef QFREE_BOUNDS_H
#define QFREE_BOUNDS_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qfree/rational.h"

namespace qfree {

/// A two-player game given by a seed sampler and a decider over bit strings
/// (each string is the integer it encodes, most significant bit first).
struct GameSpec {
    std::uint32_t r = 0;
    std::uint32_t q = 0;
    std::uint32_t a = 0;
    std::function<std::pair<std::uint64_t, std::uint64_t>(std::uint64_t seed)> sampler;
    std::function<bool(std::uint64_t x, std::uint64_t y, std::uint64_t a_alice, std::uint64_t a_bob)> decider;
    bool gapless = false;
};

/// Built-in toy specs: "toy-equal" (value 1) and "toy-half" (value 1/2).
GameSpec builtin_game_spec(const std::string &name);
std::vector<std::string> builtin_game_names();

struct GameTable {
    std::uint32_t r = 0;
    std::uint32_t q = 0;
    std::uint32_t a = 0;
    std::uint32_t delta = 0;
    bool gapless = false;
    /// Seed count per question pair, index x * 2^q + y.
    std::vector<std::uint64_t> counts;
    /// Decider bit per row, rows in lexicographic (x, y, a_A, a_B) order.
    std::vector<std::uint8_t> decider;

    std::uint32_t prob_bits() const {
        return 2 * q + delta;
    }
    std::size_t num_rows() const {
        return decider.size();
    }
    Rational probability(std::uint64_t x, std::uint64_t y) const;
    /// floor(p * 2^prob_bits), saturated at 2^prob_bits - 1.
    std::uint64_t truncated(std::uint64_t x, std::uint64_t y) const;
};

/// The content of a serialized table: what survives a round trip.
struct TableImage {
    std::uint32_t q = 0;
    std::uint32_t a = 0;
    std::uint32_t delta = 0;
    bool gapless = false;
    /// Truncated probability per question pair; empty in gapless mode.
    std::vector<std::uint64_t> truncated;
    std::vector<std::uint8_t> decider;
    bool operator==(const TableImage &) const = default;
};

inline constexpr std::uint32_t kMaxSeedBits = 26;
inline constexpr std::uint32_t kMaxRowBits = 26;

/// Enumerates all 2^r seeds (split over `threads` workers) and evaluates the
/// decider on every row.
GameTable extract_game_table(const GameSpec &spec, std::uint32_t delta, unsigned threads = 0);

TableImage table_image(const GameTable &t);

/// (2q + delta + 1) * 2^(2(q + a)), or 2^(2(q + a)) when gapless.
/// Throws CapError if the value does not fit in 64 bits.
std::uint64_t table_bit_size(std::uint64_t q, std::uint64_t a, std::uint64_t delta, bool gapless);

struct DtimeAdviceBounds {
    /// 2^(r + 2(q + a)) * t
    BigInt h;
    /// table_bit_size
    BigInt g;
};
DtimeAdviceBounds dtime_advice_bounds(std::uint64_t r, std::uint64_t q, std::uint64_t a, std::uint64_t t,
                                      std::uint64_t delta = 1, bool gapless = false);

inline constexpr std::size_t kTableHeaderBytes = 18;

/// Header "QFGT", version byte, q, a, delta as big-endian uint32, gapless byte;
/// then a single MSB-first bit stream of rows, each row being the truncated
/// probability (omitted when gapless) followed by the decider bit, zero-padded
/// only at the very end.
std::vector<std::uint8_t> serialize_table(const TableImage &t);
std::vector<std::uint8_t> serialize_table(const GameTable &t);
TableImage deserialize_table(std::span<const std::uint8_t> bytes);
/// Number of meaningful payload bits of a serialized table.
std::uint64_t payload_bits(std::span<const std::uint8_t> bytes);

/// Exact classical value of the game the table describes.
Rational table_classical_value(const GameTable &t);

/// One advice bit per game table, keyed by the serialized table.
class AdviceString {
   public:
    void set(const std::vector<std::uint8_t> &table, bool bit);
    std::optional<bool> lookup(const std::vector<std::uint8_t> &table) const;
    std::size_t size() const {
        return bits_.size();
    }

   private:
    std::map<std::vector<std::uint8_t>, bool> bits_;
};

/// Value bit of a game: 1 if the value is 1; 0 if it is at most 1/2 (gapped) or
/// below 1 (gapless). Throws InputError when a gapped game breaks the promise.
bool value_bit(const GameTable &t);

/// Advice covering the given instances, bits from the exact classical value.
AdviceString build_advice(const std::vector<GameSpec> &instances, std::uint32_t delta);

/// Computes the instance's table and outputs the advice bit stored for it.
bool decide_with_advice(const GameSpec &instance, std::uint32_t delta, const AdviceString &advice);

struct LedgerConfig {
    double log2_x_ms = 10;
    double C = 2;
    double beta = 2;
    double A = 1;
    double alpha = 1;
    /// Iteration bound constant for the gapped recursion; computed by sweep when absent.
    std::optional<double> G;
    double C_rep = 1;
    double c_rep = 1;
    /// The O(1) terms of the answer-length accounting.
    double answer_const = 1;

    /// Checks positivity and derives both Q0 values.
    void validate() const;
    std::uint64_t q0_gapless() const;
    std::uint64_t q0_gapped() const;
};

/// ceil(2 log2 l + 7 + log2|X_MS|)
std::uint64_t gapless_step(long double l, const LedgerConfig &cfg);
/// ceil(C log2(l)^beta)
std::uint64_t gapped_step(long double l, const LedgerConfig &cfg);

struct Trajectory {
    long double l0 = 0;
    /// l_1, l_2, ... up to the first value <= Q0.
    std::vector<std::uint64_t> steps;
    std::uint64_t q0 = 0;
    std::size_t iterations() const {
        return steps.size();
    }
    /// Gapped only: whether the triple-log bound applies, its value, and the verdict.
    bool bound_checked = false;
    double bound = 0;
    bool bound_holds = true;
};

Trajectory gapless_recursion(long double l0, const LedgerConfig &cfg);
Trajectory gapped_recursion(long double l0, const LedgerConfig &cfg);

/// log2(log2(log2 l)), defined for l > 4.
double triple_log2(long double l);

/// Smallest G with iterations <= G * triple_log2(l0) over l0 = 2^lo .. 2^hi (l0 > 4).
double minimal_gapped_g(const LedgerConfig &cfg, unsigned lo_exp = 4, unsigned hi_exp = 64);

enum class LedgerMode { kGapless, kGapped };

/// Gapless: a0 + sum_{i >= 1} (l_i + const), checked against a0 + log*(l0) (l0 + const).
/// Gapped: a_{i+1} = A (a_i + l_i + const) log2(l_i)^alpha over the pre-step lengths.
long double answer_length_accounting(long double a0, const Trajectory &t, LedgerMode mode,
                                     const LedgerConfig &cfg);

/// ceil((2 ln 2 / C) eps^(-c)), or with log base 2 when `log_base2`.
std::uint64_t repetition_count(double eps, double C_rep, double c_rep, bool log_base2 = false);

/// Number of log2 applications needed to bring x to at most 1.
unsigned log_star(long double x);

struct MarginRow {
    std::uint64_t n = 0;
    std::uint64_t qa = 0;
    long double left = 0;
    long double right = 0;
    bool dominates = false;
};

struct MarginReport {
    std::vector<MarginRow> rows;
    /// Smallest n0 such that every n in [n0, n_max] dominates.
    std::uint64_t n0 = 0;
};

/// q(n) + a(n) = floor(gamma log2 n); left = (2(q+a) + delta + 1) 2^(2(q+a)),
/// right = c n + log2 eps. Requires 0 < gamma < 1/2, 2 gamma < c < 1, 0 < eps < 1 - c.
MarginReport lower_bound_margin(double gamma, double c, double eps, std::uint32_t delta,
                                const std::vector<std::uint64_t> &ns, std::uint64_t n_max = std::uint64_t{1} << 32);

std::uint64_t margin_qa(std::uint64_t n, double gamma);

}  // namespace qfree

#endif
