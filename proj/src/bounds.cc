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

#include <algorithm>
#include <cmath>
#include <thread>

#include "qfree/common.h"
#include "qfree/games.h"

namespace qfree {

GameSpec builtin_game_spec(const std::string &name) {
    GameSpec g;
    g.r = 1;
    g.q = 1;
    g.a = 1;
    g.sampler = [](std::uint64_t s) { return std::pair<std::uint64_t, std::uint64_t>{s, s}; };
    if (name == "toy-equal") {
        g.decider = [](std::uint64_t, std::uint64_t, std::uint64_t a, std::uint64_t b) { return a == b; };
        return g;
    }
    if (name == "toy-half") {
        g.decider = [](std::uint64_t x, std::uint64_t, std::uint64_t a, std::uint64_t b) {
            return x == 0 && a == 1 && b == 0;
        };
        return g;
    }
    throw InputError("unknown built-in game '" + name + "'");
}

std::vector<std::string> builtin_game_names() {
    return {"toy-equal", "toy-half"};
}

Rational GameTable::probability(std::uint64_t x, std::uint64_t y) const {
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, r);
    Rational p(BigInt(std::to_string(counts.at((x << q) + y))), den);
    p.canonicalize();
    return p;
}

std::uint64_t GameTable::truncated(std::uint64_t x, std::uint64_t y) const {
    const std::uint32_t b = prob_bits();
    BigInt num(std::to_string(counts.at((x << q) + y)));
    num <<= b;
    num >>= r;
    const BigInt top = (BigInt(1) << b) - 1;
    if (num > top) {
        num = top;
    }
    return std::stoull(num.get_str());
}

namespace {

void check_spec(const GameSpec &spec) {
    if (!spec.sampler || !spec.decider) {
        throw InputError("game spec needs a sampler and a decider");
    }
    if (spec.r > kMaxSeedBits) {
        throw CapError("2^r seeds exceed the enumeration cap 2^" + std::to_string(kMaxSeedBits));
    }
    if (2 * (static_cast<std::uint64_t>(spec.q) + spec.a) > kMaxRowBits) {
        throw CapError("2^(2(q+a)) rows exceed the enumeration cap 2^" + std::to_string(kMaxRowBits));
    }
}

}  // namespace

GameTable extract_game_table(const GameSpec &spec, std::uint32_t delta, unsigned threads) {
    check_spec(spec);
    if (2 * static_cast<std::uint64_t>(spec.q) + delta > 62) {
        throw CapError("probability precision 2q + delta exceeds 62 bits");
    }
    GameTable t;
    t.r = spec.r;
    t.q = spec.q;
    t.a = spec.a;
    t.delta = delta;
    t.gapless = spec.gapless;
    const std::uint64_t seeds = std::uint64_t{1} << spec.r;
    const std::uint64_t qs = std::uint64_t{1} << spec.q;
    const std::uint64_t as = std::uint64_t{1} << spec.a;
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, seeds));
    std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(qs * qs, 0));
    std::vector<std::string> errors(threads);
    auto work = [&](unsigned w) {
        const std::uint64_t lo = seeds * w / threads;
        const std::uint64_t hi = seeds * (w + 1) / threads;
        try {
            for (std::uint64_t s = lo; s < hi; s++) {
                const auto [x, y] = spec.sampler(s);
                if (x >= qs || y >= qs) {
                    throw InputError("sampler returned a question longer than q bits");
                }
                partial[w][x * qs + y]++;
            }
        } catch (const std::exception &e) {
            errors[w] = e.what();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < threads; w++) {
        pool.emplace_back(work, w);
    }
    work(0);
    for (auto &th : pool) {
        th.join();
    }
    for (const auto &e : errors) {
        if (!e.empty()) {
            throw InputError(e);
        }
    }
    t.counts.assign(qs * qs, 0);
    for (const auto &p : partial) {
        for (std::size_t i = 0; i < p.size(); i++) {
            t.counts[i] += p[i];
        }
    }
    t.decider.resize(qs * qs * as * as);
    std::size_t row = 0;
    for (std::uint64_t x = 0; x < qs; x++) {
        for (std::uint64_t y = 0; y < qs; y++) {
            for (std::uint64_t aa = 0; aa < as; aa++) {
                for (std::uint64_t ab = 0; ab < as; ab++) {
                    t.decider[row++] = spec.decider(x, y, aa, ab) ? 1 : 0;
                }
            }
        }
    }
    return t;
}

TableImage table_image(const GameTable &t) {
    TableImage img;
    img.q = t.q;
    img.a = t.a;
    img.delta = t.delta;
    img.gapless = t.gapless;
    img.decider = t.decider;
    if (!t.gapless) {
        const std::uint64_t qs = std::uint64_t{1} << t.q;
        for (std::uint64_t x = 0; x < qs; x++) {
            for (std::uint64_t y = 0; y < qs; y++) {
                img.truncated.push_back(t.truncated(x, y));
            }
        }
    }
    return img;
}

std::uint64_t table_bit_size(std::uint64_t q, std::uint64_t a, std::uint64_t delta, bool gapless) {
    if (q > 31 || a > 31 || 2 * (q + a) > 63) {
        throw CapError("table size 2^(2(q+a)) does not fit in 64 bits");
    }
    const std::uint64_t rows = std::uint64_t{1} << (2 * (q + a));
    if (gapless) {
        return rows;
    }
    const std::uint64_t per_row = 2 * q + delta + 1;
    if (per_row < delta || rows > UINT64_MAX / per_row) {
        throw CapError("table bit size does not fit in 64 bits");
    }
    return per_row * rows;
}

DtimeAdviceBounds dtime_advice_bounds(std::uint64_t r, std::uint64_t q, std::uint64_t a, std::uint64_t t,
                                      std::uint64_t delta, bool gapless) {
    if (r > 4096 || q > 4096 || a > 4096) {
        throw CapError("exponent too large");
    }
    DtimeAdviceBounds b;
    mpz_ui_pow_ui(b.h.get_mpz_t(), 2, r + 2 * (q + a));
    b.h *= BigInt(std::to_string(t));
    BigInt rows;
    mpz_ui_pow_ui(rows.get_mpz_t(), 2, 2 * (q + a));
    b.g = gapless ? rows : rows * BigInt(std::to_string(2 * q + delta + 1));
    return b;
}

namespace {

constexpr std::uint8_t kTableVersion = 1;

class BitWriter {
   public:
    void put(std::uint64_t value, std::uint32_t bits) {
        for (std::uint32_t i = bits; i-- > 0;) {
            if (used_ % 8 == 0) {
                bytes_.push_back(0);
            }
            if ((value >> i) & 1) {
                bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (used_ % 8));
            }
            used_++;
        }
    }
    std::uint64_t used() const {
        return used_;
    }
    std::vector<std::uint8_t> &bytes() {
        return bytes_;
    }

   private:
    std::vector<std::uint8_t> bytes_;
    std::uint64_t used_ = 0;
};

class BitReader {
   public:
    explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {
    }
    std::uint64_t get(std::uint32_t bits) {
        std::uint64_t v = 0;
        for (std::uint32_t i = 0; i < bits; i++) {
            if (pos_ / 8 >= bytes_.size()) {
                throw InputError("game table payload is truncated");
            }
            v = (v << 1) | ((bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1);
            pos_++;
        }
        return v;
    }
    std::uint64_t pos() const {
        return pos_;
    }

   private:
    std::span<const std::uint8_t> bytes_;
    std::uint64_t pos_ = 0;
};

void put_u32(std::vector<std::uint8_t> &out, std::uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) {
        out.push_back(static_cast<std::uint8_t>(v >> s));
    }
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t at) {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < 4; i++) {
        v = (v << 8) | in[at + i];
    }
    return v;
}

struct Header {
    std::uint32_t q;
    std::uint32_t a;
    std::uint32_t delta;
    bool gapless;
};

Header read_header(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kTableHeaderBytes || bytes[0] != 'Q' || bytes[1] != 'F' || bytes[2] != 'G' ||
        bytes[3] != 'T') {
        throw InputError("not a game table (bad magic)");
    }
    if (bytes[4] != kTableVersion) {
        throw InputError("unsupported game table version " + std::to_string(bytes[4]));
    }
    if (bytes[17] > 1) {
        throw InputError("bad gapless flag in game table header");
    }
    Header h{get_u32(bytes, 5), get_u32(bytes, 9), get_u32(bytes, 13), bytes[17] == 1};
    if (2 * (static_cast<std::uint64_t>(h.q) + h.a) > kMaxRowBits || 2 * static_cast<std::uint64_t>(h.q) + h.delta > 62) {
        throw CapError("game table header describes a table beyond the size caps");
    }
    return h;
}

}  // namespace

std::vector<std::uint8_t> serialize_table(const TableImage &t) {
    const std::uint64_t qs = std::uint64_t{1} << t.q;
    const std::uint64_t as = std::uint64_t{1} << t.a;
    if (t.decider.size() != qs * qs * as * as || (!t.gapless && t.truncated.size() != qs * qs)) {
        throw InputError("table image has inconsistent sizes");
    }
    std::vector<std::uint8_t> out = {'Q', 'F', 'G', 'T', kTableVersion};
    put_u32(out, t.q);
    put_u32(out, t.a);
    put_u32(out, t.delta);
    out.push_back(t.gapless ? 1 : 0);
    BitWriter w;
    const std::uint32_t pb = 2 * t.q + t.delta;
    const std::uint64_t per_pair = as * as;
    for (std::size_t row = 0; row < t.decider.size(); row++) {
        if (!t.gapless) {
            w.put(t.truncated[row / per_pair], pb);
        }
        w.put(t.decider[row], 1);
    }
    if (w.used() != table_bit_size(t.q, t.a, t.delta, t.gapless)) {
        throw InvariantError("serialized payload length differs from the table bit size");
    }
    out.insert(out.end(), w.bytes().begin(), w.bytes().end());
    return out;
}

std::vector<std::uint8_t> serialize_table(const GameTable &t) {
    return serialize_table(table_image(t));
}

std::uint64_t payload_bits(std::span<const std::uint8_t> bytes) {
    const Header h = read_header(bytes);
    return table_bit_size(h.q, h.a, h.delta, h.gapless);
}

TableImage deserialize_table(std::span<const std::uint8_t> bytes) {
    const Header h = read_header(bytes);
    const std::uint64_t bits = table_bit_size(h.q, h.a, h.delta, h.gapless);
    const std::uint64_t expect = kTableHeaderBytes + (bits + 7) / 8;
    if (bytes.size() != expect) {
        throw InputError("game table has " + std::to_string(bytes.size()) + " bytes, expected " +
                         std::to_string(expect));
    }
    TableImage t;
    t.q = h.q;
    t.a = h.a;
    t.delta = h.delta;
    t.gapless = h.gapless;
    const std::uint64_t qs = std::uint64_t{1} << h.q;
    const std::uint64_t as = std::uint64_t{1} << h.a;
    const std::uint64_t per_pair = as * as;
    BitReader rd(bytes.subspan(kTableHeaderBytes));
    const std::uint32_t pb = 2 * h.q + h.delta;
    for (std::uint64_t row = 0; row < qs * qs * per_pair; row++) {
        if (!h.gapless) {
            const std::uint64_t p = rd.get(pb);
            if (row % per_pair == 0) {
                t.truncated.push_back(p);
            } else if (t.truncated.back() != p) {
                throw InputError("rows of one question pair disagree on its probability");
            }
        }
        t.decider.push_back(static_cast<std::uint8_t>(rd.get(1)));
    }
    for (std::uint64_t pad = rd.pos(); pad < (bits + 7) / 8 * 8; pad++) {
        if (rd.get(1) != 0) {
            throw InputError("nonzero padding after the game table payload");
        }
    }
    return t;
}

Rational table_classical_value(const GameTable &t) {
    TabularGame g;
    g.num_x = std::size_t{1} << t.q;
    g.num_y = std::size_t{1} << t.q;
    g.num_a = std::size_t{1} << t.a;
    g.num_b = std::size_t{1} << t.a;
    for (std::size_t x = 0; x < g.num_x; x++) {
        for (std::size_t y = 0; y < g.num_y; y++) {
            g.prob.push_back(t.probability(x, y));
        }
    }
    const std::size_t per_pair = g.num_a * g.num_b;
    g.win = [&t, &g, per_pair](std::size_t x, std::size_t y, std::size_t a, std::size_t b) {
        return t.decider[(x * g.num_y + y) * per_pair + a * g.num_b + b] != 0;
    };
    return tabular_classical_value(g);
}

void AdviceString::set(const std::vector<std::uint8_t> &table, bool bit) {
    auto [it, inserted] = bits_.emplace(table, bit);
    if (!inserted && it->second != bit) {
        throw InvariantError("conflicting advice bits for one game table");
    }
}

std::optional<bool> AdviceString::lookup(const std::vector<std::uint8_t> &table) const {
    auto it = bits_.find(table);
    if (it == bits_.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool value_bit(const GameTable &t) {
    const Rational v = table_classical_value(t);
    if (v == 1) {
        return true;
    }
    if (t.gapless || v <= Rational(1, 2)) {
        return false;
    }
    throw InputError("game value " + to_string(v) + " lies in the promise gap (1/2, 1)");
}

AdviceString build_advice(const std::vector<GameSpec> &instances, std::uint32_t delta) {
    AdviceString adv;
    for (const auto &g : instances) {
        const GameTable t = extract_game_table(g, delta, 1);
        adv.set(serialize_table(t), value_bit(t));
    }
    return adv;
}

bool decide_with_advice(const GameSpec &instance, std::uint32_t delta, const AdviceString &advice) {
    const auto bytes = serialize_table(extract_game_table(instance, delta, 1));
    const auto bit = advice.lookup(bytes);
    if (!bit) {
        throw InputError("the advice string has no entry for this game table");
    }
    return *bit;
}

namespace {

long double log2l_checked(long double l) {
    if (!(l >= 1)) {
        throw InputError("recursion length must be at least 1");
    }
    return std::log2(l);
}

std::uint64_t ceil_to_u64(long double v) {
    const long double c = std::ceil(v - 1e-12L * std::max(1.0L, std::fabs(v)));
    if (c < 0) {
        return 0;
    }
    if (c >= 18446744073709551615.0L) {
        throw CapError("recursion value does not fit in 64 bits");
    }
    return static_cast<std::uint64_t>(c);
}

// max{l : step(l) >= l}; scans until the step stays below l for good.
template <class Step, class Slope>
std::uint64_t derive_q0(Step step, Slope slope_is_settled) {
    std::uint64_t last = 0;
    for (std::uint64_t l = 1; l < (std::uint64_t{1} << 40); l++) {
        const std::uint64_t f = step(static_cast<long double>(l));
        if (f >= l) {
            last = l;
        } else if (slope_is_settled(static_cast<long double>(l), f)) {
            return last;
        }
    }
    throw InputError("ledger configuration has no finite Q0");
}

}  // namespace

std::uint64_t gapless_step(long double l, const LedgerConfig &cfg) {
    return ceil_to_u64(2 * log2l_checked(l) + 7 + cfg.log2_x_ms);
}

std::uint64_t gapped_step(long double l, const LedgerConfig &cfg) {
    const long double lg = log2l_checked(l);
    return ceil_to_u64(cfg.C * std::pow(lg, static_cast<long double>(cfg.beta)));
}

void LedgerConfig::validate() const {
    if (!(log2_x_ms >= 0) || !(C > 0) || !(beta > 0) || !(A > 0) || !(alpha >= 0) || !(C_rep > 0) ||
        !(c_rep > 0) || !(answer_const >= 0)) {
        throw InputError("ledger constants out of range");
    }
    if (G && !(*G > 0)) {
        throw InputError("G must be positive");
    }
    (void)q0_gapless();
    (void)q0_gapped();
}

std::uint64_t LedgerConfig::q0_gapless() const {
    // 2 log2 l + const has slope 2 / (l ln 2), decreasing everywhere.
    return derive_q0([this](long double l) { return gapless_step(l, *this); },
                     [](long double l, std::uint64_t) { return 2 / (l * std::log(2.0L)) < 1; });
}

std::uint64_t LedgerConfig::q0_gapped() const {
    const long double b = beta;
    const long double c = C;
    return derive_q0([this](long double l) { return gapped_step(l, *this); },
                     [b, c](long double l, std::uint64_t) {
                         const long double lg = std::log2(l);
                         const long double slope = c * b * std::pow(lg, b - 1) / (l * std::log(2.0L));
                         return slope < 1 && lg > (b - 1) / std::log(2.0L);
                     });
}

namespace {

template <class Step>
Trajectory run_recursion(long double l0, std::uint64_t q0, Step step) {
    if (!(l0 >= 1)) {
        throw InputError("l0 must be at least 1");
    }
    Trajectory t;
    t.l0 = l0;
    t.q0 = q0;
    long double cur = l0;
    while (cur > static_cast<long double>(q0)) {
        const std::uint64_t next = step(cur);
        if (!(static_cast<long double>(next) < cur)) {
            throw InvariantError("recursion failed to decrease above Q0");
        }
        t.steps.push_back(next);
        cur = static_cast<long double>(next);
    }
    return t;
}

}  // namespace

Trajectory gapless_recursion(long double l0, const LedgerConfig &cfg) {
    cfg.validate();
    return run_recursion(l0, cfg.q0_gapless(), [&cfg](long double l) { return gapless_step(l, cfg); });
}

double triple_log2(long double l) {
    if (!(l > 4)) {
        throw InputError("triple logarithm needs l > 4");
    }
    return static_cast<double>(std::log2(std::log2(std::log2(l))));
}

double minimal_gapped_g(const LedgerConfig &cfg, unsigned lo_exp, unsigned hi_exp) {
    LedgerConfig c = cfg;
    c.G.reset();
    double g = 0;
    for (unsigned e = lo_exp; e <= hi_exp; e++) {
        const long double l0 = std::ldexp(1.0L, static_cast<int>(e));
        if (!(l0 > 4)) {
            continue;
        }
        const Trajectory t = gapped_recursion(l0, c);
        g = std::max(g, static_cast<double>(t.iterations()) / triple_log2(l0));
    }
    return g;
}

Trajectory gapped_recursion(long double l0, const LedgerConfig &cfg) {
    cfg.validate();
    Trajectory t = run_recursion(l0, cfg.q0_gapped(), [&cfg](long double l) { return gapped_step(l, cfg); });
    if (cfg.G && l0 > 4) {
        t.bound_checked = true;
        t.bound = *cfg.G * triple_log2(l0);
        t.bound_holds = static_cast<double>(t.iterations()) <= t.bound + 1e-12;
    }
    return t;
}

unsigned log_star(long double x) {
    if (!(x >= 0)) {
        throw InputError("log* needs a non-negative argument");
    }
    unsigned n = 0;
    while (x > 1) {
        x = std::log2(x);
        n++;
    }
    return n;
}

long double answer_length_accounting(long double a0, const Trajectory &t, LedgerMode mode,
                                     const LedgerConfig &cfg) {
    if (!(a0 >= 0)) {
        throw InputError("initial answer length must be non-negative");
    }
    for (std::size_t i = 0; i < t.steps.size(); i++) {
        const long double before = i == 0 ? t.l0 : static_cast<long double>(t.steps[i - 1]);
        if (!(static_cast<long double>(t.steps[i]) < before)) {
            throw InputError("trajectory is not a decreasing recursion from l0");
        }
    }
    const long double k = cfg.answer_const;
    if (mode == LedgerMode::kGapless) {
        if (t.steps.size() >= 2 && t.steps[t.steps.size() - 2] <= t.q0) {
            throw InputError("trajectory continues below Q0");
        }
        long double a = a0;
        for (std::uint64_t l : t.steps) {
            a += static_cast<long double>(l) + k;
        }
        const long double cap = a0 + static_cast<long double>(log_star(t.l0)) * (t.l0 + k);
        if (a > cap) {
            throw InvariantError("answer length exceeds a0 + log*(l0) (l0 + const)");
        }
        return a;
    }
    long double a = a0;
    for (std::size_t i = 0; i < t.steps.size(); i++) {
        const long double li = i == 0 ? t.l0 : static_cast<long double>(t.steps[i - 1]);
        a = cfg.A * (a + li + k) * std::pow(std::log2(li), static_cast<long double>(cfg.alpha));
    }
    return a;
}

std::uint64_t repetition_count(double eps, double C_rep, double c_rep, bool log_base2) {
    if (!(eps > 0 && eps < 1) || !(C_rep > 0) || !(c_rep > 0)) {
        throw InputError("repetition count needs 0 < eps < 1, C > 0 and c > 0");
    }
    const long double lead = log_base2 ? 2.0L : 2.0L * std::log(2.0L);
    const long double x = C_rep * std::pow(static_cast<long double>(eps), static_cast<long double>(c_rep));
    const std::uint64_t k = ceil_to_u64(lead / x);
    const long double tail = std::exp(-x * static_cast<long double>(k) / 2);
    if (tail > 0.5L + 1e-15L) {
        throw InvariantError("repetition count does not halve the soundness error");
    }
    if (x <= 1 && std::pow(1 - x, static_cast<long double>(k) / 2) > tail * (1 + 1e-12L)) {
        throw InvariantError("(1 - x)^(k/2) exceeds exp(-x k / 2)");
    }
    return k;
}

std::uint64_t margin_qa(std::uint64_t n, double gamma) {
    if (n == 0) {
        throw InputError("n must be positive");
    }
    const long double v = static_cast<long double>(gamma) * std::log2(static_cast<long double>(n));
    return static_cast<std::uint64_t>(std::floor(v + 1e-12L));
}

namespace {

long double margin_left(std::uint64_t qa, std::uint32_t delta) {
    return static_cast<long double>(2 * qa + delta + 1) * std::ldexp(1.0L, static_cast<int>(2 * qa));
}

long double margin_right(std::uint64_t n, double c, double eps) {
    return static_cast<long double>(c) * static_cast<long double>(n) + std::log2(static_cast<long double>(eps));
}

}  // namespace

MarginReport lower_bound_margin(double gamma, double c, double eps, std::uint32_t delta,
                                const std::vector<std::uint64_t> &ns, std::uint64_t n_max) {
    if (!(gamma > 0 && gamma < 0.5)) {
        throw InputError("gamma must lie strictly between 0 and 1/2");
    }
    if (!(c > 2 * gamma && c < 1)) {
        throw InputError("c must satisfy 2 gamma < c < 1");
    }
    if (!(eps > 0 && eps < 1 - c)) {
        throw InputError("eps must satisfy 0 < eps < 1 - c");
    }
    if (n_max == 0) {
        throw InputError("n_max must be positive");
    }
    MarginReport rep;
    auto row = [&](std::uint64_t n) {
        MarginRow r;
        r.n = n;
        r.qa = margin_qa(n, gamma);
        r.left = margin_left(r.qa, delta);
        r.right = margin_right(n, c, eps);
        r.dominates = r.right >= r.left;
        return r;
    };
    for (std::uint64_t n : ns) {
        rep.rows.push_back(row(n));
    }
    // The left side is constant on runs of equal q + a; the right side increases.
    rep.n0 = 1;
    std::uint64_t start = 1;
    while (start <= n_max) {
        const std::uint64_t qa = margin_qa(start, gamma);
        long double guess = std::ceil(std::exp2(static_cast<long double>(qa + 1) / gamma));
        std::uint64_t next = guess > static_cast<long double>(n_max) ? n_max + 1 : static_cast<std::uint64_t>(guess);
        next = std::max(next, start + 1);
        while (next > start + 1 && margin_qa(next - 1, gamma) > qa) {
            next--;
        }
        while (next <= n_max && margin_qa(next, gamma) == qa) {
            next++;
        }
        const std::uint64_t end = std::min(next - 1, n_max);
        const long double left = margin_left(qa, delta);
        long double need = (left - std::log2(static_cast<long double>(eps))) / static_cast<long double>(c);
        std::uint64_t first = need <= static_cast<long double>(start)
                                  ? start
                                  : (need > static_cast<long double>(end) ? end + 1
                                                                          : static_cast<std::uint64_t>(std::ceil(need)));
        while (first > start && row(first - 1).dominates) {
            first--;
        }
        while (first <= end && !row(first).dominates) {
            first++;
        }
        if (first > start) {
            rep.n0 = first;
        }
        start = next;
    }
    return rep;
}

}  // namespace qfree
