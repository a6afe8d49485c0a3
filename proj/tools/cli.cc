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

#include "cli.h"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "qfree/analysis.h"
#include "qfree/bellqma.h"
#include "qfree/bounds.h"
#include "qfree/common.h"
#include "qfree/csp.h"
#include "qfree/games.h"
#include "qfree/json_io.h"

namespace qfree::cli {

namespace fs = std::filesystem;

std::string format_double(double x) {
    if (x == 0) {
        return "0";
    }
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, r.ptr);
}

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw InvariantError("SHA-256 failed");
    }
    static const char *hex = "0123456789abcdef";
    std::string s;
    for (unsigned int i = 0; i < len; i++) {
        s += hex[md[i] >> 4];
        s += hex[md[i] & 15];
    }
    return s;
}

namespace {

enum class Level { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

Level level_from_env() {
    const char *v = std::getenv("QFREE_LOG");
    if (v == nullptr || *v == '\0') {
        return Level::kWarn;
    }
    const std::string s(v);
    if (s == "error") {
        return Level::kError;
    }
    if (s == "warn") {
        return Level::kWarn;
    }
    if (s == "info") {
        return Level::kInfo;
    }
    if (s == "debug") {
        return Level::kDebug;
    }
    throw InputError("QFREE_LOG must be one of error, warn, info, debug");
}

std::vector<std::uint8_t> read_bytes(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw InputError("cannot open '" + p.string() + "'");
    }
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

std::string read_text(const fs::path &p) {
    auto b = read_bytes(p);
    return std::string(b.begin(), b.end());
}

void write_bytes(const fs::path &p, std::span<const std::uint8_t> bytes) {
    if (p.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(p.parent_path(), ec);
    }
    std::ofstream o(p, std::ios::binary | std::ios::trunc);
    if (!o) {
        throw InputError("cannot write '" + p.string() + "'");
    }
    o.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!o) {
        throw InputError("write failed for '" + p.string() + "'");
    }
}

void write_text(const fs::path &p, const std::string &s) {
    write_bytes(p, std::span(reinterpret_cast<const std::uint8_t *>(s.data()), s.size()));
}

std::string utc_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class Csv {
   public:
    explicit Csv(std::vector<std::string> header) : width_(header.size()) {
        add(header);
    }
    void row(std::vector<std::string> cells) {
        if (cells.size() != width_) {
            throw InvariantError("CSV row width mismatch");
        }
        add(cells);
    }
    const std::string &body() const {
        return body_;
    }

   private:
    void add(const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); i++) {
            if (i) {
                body_ += ',';
            }
            body_ += cells[i];
        }
        body_ += '\n';
    }
    std::size_t width_;
    std::string body_;
};

std::string fmt(double x) {
    return format_double(x);
}
std::string fmt(std::uint64_t x) {
    return std::to_string(x);
}

struct Globals {
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::string out_dir;
    std::uint64_t cap_dim = std::uint64_t{1} << 22;
    std::uint64_t cap_lp = kDefaultLpCap;
    std::string format = "csv";
};

struct Result {
    std::string stem;
    std::string csv;
    json js;
};

struct Context {
    Globals g;
    Level level = Level::kWarn;
    std::ostream *out = nullptr;
    std::ostream *err = nullptr;
    std::vector<std::string> args;
    json config = json::object();
    std::vector<fs::path> written;
    std::string started_at;

    void log(Level l, const std::string &msg) const {
        static const char *names[] = {"error", "warn", "info", "debug"};
        if (l <= level) {
            *err << "[" << names[static_cast<int>(l)] << "] " << msg << "\n";
        }
    }
    std::uint64_t require_seed(const std::string &why) const {
        if (!g.has_seed) {
            throw InputError("--seed is required for " + why);
        }
        return g.seed;
    }
    fs::path out_path(const std::string &explicit_path, const std::string &default_name) const {
        if (!explicit_path.empty()) {
            return explicit_path;
        }
        if (!g.out_dir.empty()) {
            return fs::path(g.out_dir) / default_name;
        }
        return {};
    }
    void record(const fs::path &p) {
        written.push_back(p);
    }
};

void write_manifest(Context &ctx) {
    if (ctx.g.out_dir.empty()) {
        return;
    }
    const fs::path dir(ctx.g.out_dir);
    json m;
    m["tool"] = "qfree";
    m["version"] = QFREE_VERSION;
    m["command"] = ctx.args;
    m["config"] = ctx.config;
    if (ctx.g.has_seed) {
        m["seed"] = ctx.g.seed;
    }
    m["started_at"] = ctx.started_at;
    m["finished_at"] = utc_now();
    json files = json::array();
    for (const fs::path &p : ctx.written) {
        const auto bytes = read_bytes(p);
        std::error_code ec;
        fs::path rel = fs::relative(p, dir, ec);
        if (ec || rel.empty() || *rel.begin() == "..") {
            rel = fs::absolute(p);
        }
        files.push_back({{"path", rel.generic_string()}, {"bytes", bytes.size()}, {"sha256", sha256_hex(bytes)}});
    }
    m["files"] = files;
    write_text(dir / "manifest.json", m.dump(2) + "\n");
}

void emit(Context &ctx, const Result &r) {
    const bool as_json = ctx.g.format == "json";
    const std::string body = as_json ? r.js.dump(2) + "\n" : r.csv;
    if (ctx.g.out_dir.empty()) {
        *ctx.out << body;
        return;
    }
    const fs::path p = fs::path(ctx.g.out_dir) / (r.stem + (as_json ? ".json" : ".csv"));
    write_text(p, body);
    ctx.record(p);
    ctx.log(Level::kInfo, "wrote " + p.string());
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::uint64_t parse_u64(const std::string &s, const char *what) {
    std::uint64_t v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
        throw InputError(std::string("bad ") + what + " '" + s + "'");
    }
    return v;
}

double parse_double(const std::string &s, const char *what) {
    double v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw InputError(std::string("bad ") + what + " '" + s + "'");
    }
    return v;
}

std::vector<int> parse_int_list(const std::string &s, const char *what) {
    std::vector<int> v;
    for (const auto &p : split(s, ',')) {
        v.push_back(static_cast<int>(parse_u64(p, what)));
    }
    return v;
}

/// "a,b,c" or "lo:hi" (inclusive).
std::vector<std::uint64_t> parse_range(const std::string &s, const char *what) {
    std::vector<std::uint64_t> v;
    const auto colon = s.find(':');
    if (colon != std::string::npos) {
        const auto lo = parse_u64(s.substr(0, colon), what);
        const auto hi = parse_u64(s.substr(colon + 1), what);
        if (hi < lo || hi - lo > 100000) {
            throw InputError(std::string("bad ") + what + " range '" + s + "'");
        }
        for (auto x = lo; x <= hi; x++) {
            v.push_back(x);
        }
        return v;
    }
    for (const auto &p : split(s, ',')) {
        v.push_back(parse_u64(p, what));
    }
    return v;
}

std::vector<std::string> parse_word_list(const std::string &s) {
    std::vector<std::string> v;
    for (const auto &p : split(s, ',')) {
        if (p.empty()) {
            throw InputError("empty entry in list '" + s + "'");
        }
        v.push_back(p);
    }
    return v;
}

/// "1e6", "1000000", or "2^20".
long double parse_length(const std::string &s) {
    const auto caret = s.find('^');
    if (caret != std::string::npos) {
        const double b = parse_double(s.substr(0, caret), "length base");
        const double e = parse_double(s.substr(caret + 1), "length exponent");
        return std::pow(static_cast<long double>(b), static_cast<long double>(e));
    }
    return parse_double(s, "length");
}

struct InstanceOpts {
    std::string path;
    std::string builtin;
    int colors = 2;
};

void add_instance_opts(CLI::App *sub, InstanceOpts &o) {
    sub->add_option("--instance", o.path, "K-coloring instance JSON");
    sub->add_option("--builtin", o.builtin, "cycle<N> or triangle");
    sub->add_option("--colors", o.colors, "K for built-in instances")->capture_default_str();
}

KcolInstance load_instance(const InstanceOpts &o) {
    if (o.path.empty() == o.builtin.empty()) {
        throw InputError("give exactly one of --instance and --builtin");
    }
    if (!o.path.empty()) {
        return kcol_from_json(parse_json(read_text(o.path), o.path));
    }
    if (o.colors < 1 || o.colors > 64) {
        throw InputError("--colors must be in 1..64");
    }
    if (o.builtin == "triangle") {
        return triangle_instance(o.colors);
    }
    if (o.builtin.rfind("cycle", 0) == 0) {
        const auto n = parse_u64(o.builtin.substr(5), "cycle length");
        if (n < 3 || n > 64) {
            throw InputError("cycle length must be in 3..64");
        }
        return cycle_instance(static_cast<int>(n), o.colors);
    }
    throw InputError("unknown built-in instance '" + o.builtin + "'");
}

Rational parse_eta(const std::string &s) {
    Rational eta = rational_from_decimal(s);
    if (eta <= 0 || eta >= 1) {
        throw InputError("eta must be in (0, 1)");
    }
    return eta;
}

std::string eta_text(const std::string &s) {
    return s;
}

/// Colorings used when none is given: a proper coloring when one exists, else
/// the lexicographically first one with the fewest violations.
Coloring default_coloring(const KcolInstance &inst) {
    if (auto c = is_colorable(inst)) {
        return *c;
    }
    return min_violation_coloring(inst).coloring;
}

struct AdversaryOpts {
    std::string kind = "honest";
    std::string coloring;
    double bias = 0;
    bool uniform_answers = false;
    std::string edge_colors;
    std::string vertex_colors;
    std::string copies;
    std::string amplitudes;
};

void add_adversary_opts(CLI::App *sub, AdversaryOpts &o) {
    sub->add_option("--adversary", o.kind, "honest, biased-amplitudes, cheating-coloring, entangled-copies")
        ->capture_default_str();
    sub->add_option("--coloring", o.coloring, "vertex colors, e.g. 1,2,1,2");
    sub->add_option("--bias", o.bias, "biased-amplitudes: question weights (1+s, 1-s, 1, ...)");
    sub->add_flag("--uniform-answers", o.uniform_answers, "biased-amplitudes: answers in uniform superposition");
    sub->add_option("--edge-colors", o.edge_colors, "cheating-coloring: c1:c2 per edge, comma separated");
    sub->add_option("--vertex-colors", o.vertex_colors, "cheating-coloring: color per vertex");
    sub->add_option("--copies", o.copies, "entangled-copies: colorings separated by ';'");
    sub->add_option("--amplitudes", o.amplitudes, "entangled-copies: amplitude per coloring");
}

AdversarySpec build_adversary(const AdversaryOpts &o, const KcolInstance &inst, double strength) {
    AdversarySpec spec;
    spec.kind = parse_adversary_kind(o.kind);
    spec.coloring = o.coloring.empty() ? default_coloring(inst) : Coloring{parse_int_list(o.coloring, "color")};
    switch (spec.kind) {
        case AdversaryKind::kHonest:
            break;
        case AdversaryKind::kBiasedAmplitudes:
            if (!(strength >= 0 && strength <= 1)) {
                throw InputError("bias must be in [0, 1]");
            }
            if (inst.num_edges() < 2 || inst.num_vertices() < 2) {
                throw InputError("biased amplitudes need at least two edges and two vertices");
            }
            spec.alice_weights = biased_family_weights(inst.num_edges(), strength);
            spec.bob_weights = biased_family_weights(static_cast<std::size_t>(inst.num_vertices()), strength);
            spec.uniform_answers = o.uniform_answers;
            break;
        case AdversaryKind::kCheatingColoring: {
            spec.vertex_colors =
                o.vertex_colors.empty() ? spec.coloring.colors : parse_int_list(o.vertex_colors, "vertex color");
            if (spec.vertex_colors.size() != static_cast<std::size_t>(inst.num_vertices())) {
                throw InputError("need one vertex color per vertex");
            }
            if (!o.edge_colors.empty()) {
                for (const auto &p : split(o.edge_colors, ',')) {
                    const auto cc = split(p, ':');
                    if (cc.size() != 2) {
                        throw InputError("edge colors are c1:c2 pairs");
                    }
                    spec.edge_colors.emplace_back(static_cast<int>(parse_u64(cc[0], "edge color")),
                                                  static_cast<int>(parse_u64(cc[1], "edge color")));
                }
                for (const auto &[c1, c2] : spec.edge_colors) {
                    if (c1 < 1 || c2 < 1 || c1 > inst.num_colors() || c2 > inst.num_colors()) {
                        throw InputError("edge color out of range");
                    }
                }
            } else {
                // Alice keeps the vertex coloring where R allows it, otherwise the
                // first allowed pair that agrees with the first endpoint.
                for (std::size_t e = 0; e < inst.num_edges(); e++) {
                    const Edge &ed = inst.edge(e);
                    const int cu = spec.vertex_colors.at(ed.u);
                    const int cv = spec.vertex_colors.at(ed.v);
                    std::pair<int, int> pick{cu, cv};
                    if (!inst.allowed(e, cu, cv)) {
                        std::optional<std::pair<int, int>> any;
                        std::optional<std::pair<int, int>> first_agrees;
                        for (int a = 1; a <= inst.num_colors(); a++) {
                            for (int b = 1; b <= inst.num_colors(); b++) {
                                if (inst.allowed(e, a, b)) {
                                    if (!any) {
                                        any = std::pair{a, b};
                                    }
                                    if (a == cu && !first_agrees) {
                                        first_agrees = std::pair{a, b};
                                    }
                                }
                            }
                        }
                        if (first_agrees) {
                            pick = *first_agrees;
                        } else if (any) {
                            pick = *any;
                        }
                    }
                    spec.edge_colors.push_back(pick);
                }
            }
            break;
        }
        case AdversaryKind::kEntangledCopies: {
            if (o.copies.empty() || o.amplitudes.empty()) {
                throw InputError("entangled copies need --copies and --amplitudes");
            }
            for (const auto &c : split(o.copies, ';')) {
                spec.copy_colorings.push_back(Coloring{parse_int_list(c, "color")});
            }
            for (const auto &a : split(o.amplitudes, ',')) {
                spec.copy_amplitudes.push_back(parse_double(a, "amplitude"));
            }
            break;
        }
        case AdversaryKind::kCustom:
            throw InputError("the custom adversary is only available through the library");
    }
    return spec;
}

void check_dims(const ProtocolParams &params, std::uint64_t cap) {
    try {
        checked_pow(params.alice_question_dim() * params.alice_answer_dim(), params.k(), cap,
                    "Alice witness dimension");
        checked_pow(params.bob_question_dim() * params.bob_answer_dim(), params.k(), cap, "Bob witness dimension");
    } catch (const CapError &e) {
        throw CapError(std::string(e.what()) + "; raise --cap-dim or use --mode sample");
    }
}

std::mt19937_64 task_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

struct SimRow {
    ProtocolOutcome p;
    std::optional<SampledOutcome> sampled;
};

SimRow simulate_point(const KcolInstance &inst, std::size_t k, const Rational &eta, const AdversaryOpts &adv,
                      double strength, const std::string &mode, std::uint64_t shots, std::uint64_t cap_dim,
                      std::mt19937_64 *rng) {
    ProtocolParams params(inst, k, eta);
    const AdversarySpec spec = build_adversary(adv, inst, strength);
    SimRow row;
    if (mode == "exact") {
        check_dims(params, cap_dim);
        row.p = protocol_accept_prob(build_witnesses(spec, params), params);
        return row;
    }
    if (mode != "sample") {
        throw InputError("mode must be exact or sample");
    }
    if (spec.kind == AdversaryKind::kEntangledCopies) {
        throw InputError("sample mode needs witnesses that are tensor powers of one copy");
    }
    if (shots == 0) {
        throw InputError("--shots must be positive");
    }
    ProtocolParams one(inst, 1, eta);
    const WitnessPair copy = build_witnesses(spec, one);
    row.sampled = sample_protocol(copy.psi1, copy.psi2, params, shots, *rng);
    row.p = row.sampled->estimate;
    return row;
}

/// Runs tasks 0..n-1 on worker threads; results land in grid order.
template <class T, class F>
std::vector<T> run_grid(std::size_t n, unsigned threads, F f) {
    std::vector<std::optional<T>> out(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < t; i++) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &th : pool) {
        th.join();
    }
    std::vector<T> res;
    for (std::size_t i = 0; i < n; i++) {
        if (errors[i]) {
            std::rethrow_exception(errors[i]);
        }
        res.push_back(std::move(*out[i]));
    }
    return res;
}

unsigned default_threads() {
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

TrendPoint trend_point(std::size_t question_dim, std::size_t answer_dim, std::size_t k, const Rational &eta,
                       double eps, std::uint64_t cap_lp) {
    TrendPoint t;
    t.eps = eps;
    t.bias = biased_family_bias_for_failure(question_dim, answer_dim, k, eta, eps);
    t.failure = biased_family_failure(question_dim, answer_dim, k, eta, t.bias);
    const auto w = biased_family_weights(question_dim, t.bias);
    const StateVector state = tensor_power(biased_copy_state(question_dim, answer_dim, w, {}), k);
    std::vector<std::size_t> regs;
    for (std::size_t i = 0; i < k; i++) {
        regs.push_back(2 * i);
    }
    const OutcomeDistribution d = measurement_distribution(state, regs);
    const std::size_t t_min = uniformity_threshold(k, answer_dim, eta);
    t.distance = tv_to_mixture_family(d.probabilities, question_dim, k, t_min, cap_lp).distance;
    return t;
}

void verify_manifest(const fs::path &manifest) {
    const json m = parse_json(read_text(manifest), manifest.string());
    if (!m.contains("files") || !m.at("files").is_array()) {
        throw InputError("manifest has no file list");
    }
    const fs::path dir = manifest.parent_path();
    for (const auto &f : m.at("files")) {
        const fs::path rel = f.at("path").get<std::string>();
        const fs::path p = rel.is_absolute() ? rel : dir / rel;
        const auto bytes = read_bytes(p);
        if (sha256_hex(bytes) != f.at("sha256").get<std::string>()) {
            throw InputError("digest mismatch for '" + rel.generic_string() + "'");
        }
    }
}

namespace {

struct ReduceOpts {
    std::string cnf;
    std::string out;
};

void cmd_reduce(Context &ctx, const ReduceOpts &o) {
    std::ifstream in(o.cnf);
    if (!in) {
        throw InputError("cannot open '" + o.cnf + "'");
    }
    const SatInstance sat = parse_dimacs(in);
    const KcolInstance inst = reduce_3sat_to_kcol(sat);
    const std::string text = kcol_to_json(inst).dump(2) + "\n";
    const fs::path p = ctx.out_path(o.out, "instance.json");
    std::ostringstream summary;
    summary << "n=" << inst.num_vertices() << " m=" << inst.num_edges() << " K=" << inst.num_colors() << "\n";
    if (p.empty()) {
        *ctx.out << text;
        *ctx.err << summary.str();
        return;
    }
    write_text(p, text);
    ctx.record(p);
    *ctx.out << summary.str();
}

struct SimulateOpts {
    InstanceOpts inst;
    AdversaryOpts adv;
    std::size_t k = 1;
    std::string eta = "0.5";
    std::string mode = "exact";
    std::uint64_t shots = 10000;
};

const std::vector<std::string> kSimHeader = {"run_id",   "k",        "eta",    "adversary",
                                             "p_unif_1", "p_unif_2", "p_cons", "p_accept"};

std::vector<std::string> sim_cells(std::uint64_t id, std::size_t k, const std::string &eta,
                                   const std::string &adversary, const ProtocolOutcome &p) {
    return {fmt(id),         fmt(std::uint64_t{k}), eta, adversary, fmt(p.p_unif_1), fmt(p.p_unif_2),
            fmt(p.p_cons), fmt(p.p_accept)};
}

json outcome_json(const ProtocolOutcome &p) {
    return {{"p_unif_1", p.p_unif_1}, {"p_unif_2", p.p_unif_2}, {"p_cons", p.p_cons}, {"p_accept", p.p_accept}};
}

void cmd_simulate(Context &ctx, const SimulateOpts &o) {
    const KcolInstance inst = load_instance(o.inst);
    const Rational eta = parse_eta(o.eta);
    std::optional<std::mt19937_64> rng;
    if (o.mode == "sample") {
        rng = task_rng(ctx.require_seed("sample mode"), 0);
    }
    const SimRow row =
        simulate_point(inst, o.k, eta, o.adv, o.adv.bias, o.mode, o.shots, ctx.g.cap_dim, rng ? &*rng : nullptr);
    const std::string adv = parse_adversary_kind(o.adv.kind) == AdversaryKind::kHonest ? "honest" : o.adv.kind;
    auto header = kSimHeader;
    auto cells = sim_cells(0, o.k, eta_text(o.eta), adv, row.p);
    json js = {{"run_id", 0}, {"k", o.k}, {"eta", o.eta}, {"adversary", adv}, {"mode", o.mode}};
    js.update(outcome_json(row.p));
    if (row.sampled) {
        for (const char *h : {"se_p_unif_1", "se_p_unif_2", "se_p_cons", "se_p_accept", "shots"}) {
            header.push_back(h);
        }
        const auto &se = row.sampled->std_error;
        cells.insert(cells.end(), {fmt(se.p_unif_1), fmt(se.p_unif_2), fmt(se.p_cons), fmt(se.p_accept),
                                   fmt(row.sampled->shots)});
        js["std_error"] = outcome_json(se);
        js["shots"] = row.sampled->shots;
    }
    Csv csv(header);
    csv.row(cells);
    emit(ctx, {"simulate", csv.body(), js});
}

struct SweepOpts {
    std::string kind = "protocol";
    InstanceOpts inst;
    AdversaryOpts adv;
    std::string k_list = "1";
    std::string eta_list = "0.5";
    std::string strength_list = "0";
    std::string eps_list = "0.3,0.1,0.03,0.01,0.003";
    std::string mode = "exact";
    std::uint64_t shots = 10000;
    std::size_t question_dim = 2;
    std::size_t answer_dim = 2;
    unsigned threads = 0;
};

void cmd_sweep(Context &ctx, const SweepOpts &o) {
    const auto ks = parse_range(o.k_list, "k");
    const auto etas = parse_word_list(o.eta_list);
    std::vector<Rational> eta_vals;
    for (const auto &e : etas) {
        eta_vals.push_back(parse_eta(e));
    }
    const unsigned threads = o.threads ? o.threads : default_threads();
    if (o.kind == "trend") {
        std::vector<double> eps;
        for (const auto &e : parse_word_list(o.eps_list)) {
            eps.push_back(parse_double(e, "eps"));
        }
        struct Point {
            std::size_t k, eta, eps;
        };
        std::vector<Point> grid;
        for (std::size_t a = 0; a < ks.size(); a++) {
            for (std::size_t b = 0; b < etas.size(); b++) {
                for (std::size_t c = 0; c < eps.size(); c++) {
                    grid.push_back({a, b, c});
                }
            }
        }
        const std::uint64_t cap = ctx.g.cap_lp;
        auto rows = run_grid<TrendPoint>(grid.size(), threads, [&](std::size_t i) {
            const Point &p = grid[i];
            return trend_point(o.question_dim, o.answer_dim, ks[p.k], eta_vals[p.eta], eps[p.eps], cap);
        });
        Csv csv({"run_id", "k", "eta", "eps", "bias", "failure", "tv_distance"});
        json js = json::array();
        for (std::size_t i = 0; i < grid.size(); i++) {
            const auto &t = rows[i];
            csv.row({fmt(std::uint64_t{i}), fmt(ks[grid[i].k]), etas[grid[i].eta], fmt(t.eps), fmt(t.bias),
                     fmt(t.failure), fmt(t.distance)});
            js.push_back({{"run_id", i},
                          {"k", ks[grid[i].k]},
                          {"eta", etas[grid[i].eta]},
                          {"eps", t.eps},
                          {"bias", t.bias},
                          {"failure", t.failure},
                          {"tv_distance", t.distance}});
        }
        emit(ctx, {"sweep", csv.body(), js});
        return;
    }
    if (o.kind != "protocol") {
        throw InputError("sweep kind must be protocol or trend");
    }
    const KcolInstance inst = load_instance(o.inst);
    std::vector<double> strengths;
    for (const auto &s : parse_word_list(o.strength_list)) {
        strengths.push_back(parse_double(s, "strength"));
    }
    std::uint64_t seed = 0;
    if (o.mode == "sample") {
        seed = ctx.require_seed("sample mode");
    }
    struct Point {
        std::size_t k, eta, s;
    };
    std::vector<Point> grid;
    for (std::size_t a = 0; a < ks.size(); a++) {
        for (std::size_t b = 0; b < etas.size(); b++) {
            for (std::size_t c = 0; c < strengths.size(); c++) {
                grid.push_back({a, b, c});
            }
        }
    }
    const std::uint64_t cap = ctx.g.cap_dim;
    auto rows = run_grid<SimRow>(grid.size(), threads, [&](std::size_t i) {
        const Point &p = grid[i];
        auto rng = task_rng(seed, i);
        return simulate_point(inst, ks[p.k], eta_vals[p.eta], o.adv, strengths[p.s], o.mode, o.shots, cap, &rng);
    });
    auto header = kSimHeader;
    header.insert(header.begin() + 4, "strength");
    Csv csv(header);
    json js = json::array();
    for (std::size_t i = 0; i < grid.size(); i++) {
        auto cells = sim_cells(i, ks[grid[i].k], etas[grid[i].eta], o.adv.kind, rows[i].p);
        cells.insert(cells.begin() + 4, fmt(strengths[grid[i].s]));
        csv.row(cells);
        json r = {{"run_id", i},
                  {"k", ks[grid[i].k]},
                  {"eta", etas[grid[i].eta]},
                  {"adversary", o.adv.kind},
                  {"strength", strengths[grid[i].s]}};
        r.update(outcome_json(rows[i].p));
        js.push_back(r);
    }
    emit(ctx, {"sweep", csv.body(), js});
}

struct GameValueOpts {
    std::string spec;
    std::uint64_t cap = kDefaultStrategyCap;
};

void cmd_game_value(Context &ctx, const GameValueOpts &o) {
    const GameRequest req = game_request_from_json(parse_json(read_text(o.spec), o.spec));
    const GameValueReport r = game_value(req.spec, req.dist, o.cap);
    json js = game_report_to_json(r);
    js["k"] = req.spec.k;
    js["l"] = req.spec.l;
    js["model"] = model_name(req.spec.model);
    js["restricted"] = req.restricted;
    Csv csv({"k", "l", "model", "exact", "value_num", "value_den", "value", "error_bound", "enumerated_side",
             "strategies_enumerated"});
    Rational v = r.value;
    v.canonicalize();
    csv.row({fmt(std::uint64_t{req.spec.k}), fmt(std::uint64_t{req.spec.l}), model_name(req.spec.model),
             r.exact ? "true" : "false", r.exact ? v.get_num().get_str() : "", r.exact ? v.get_den().get_str() : "",
             fmt(r.exact ? to_double(v) : r.value_real), fmt(r.error_bound), r.enumerated_side,
             fmt(r.strategies_enumerated)});
    emit(ctx, {"game_value", csv.body(), js});
}

struct DecomposeOpts {
    std::string dist;
    std::int64_t t_min = -1;
    std::string eta;
    std::size_t answer_dim = 0;
    std::string arith = "auto";
};

void cmd_decompose(Context &ctx, const DecomposeOpts &o) {
    const DecomposeRequest req = decompose_request_from_json(parse_json(read_text(o.dist), o.dist));
    std::size_t t_min = 0;
    if ((o.t_min >= 0) == !o.eta.empty()) {
        throw InputError("give exactly one of --t-min and --eta (with --answer-dim)");
    }
    if (o.t_min >= 0) {
        t_min = static_cast<std::size_t>(o.t_min);
    } else {
        if (o.answer_dim == 0) {
            throw InputError("--eta needs --answer-dim");
        }
        t_min = uniformity_threshold(req.k, o.answer_dim, parse_eta(o.eta));
    }
    LpArithmetic arith = LpArithmetic::kAuto;
    if (o.arith == "exact") {
        arith = LpArithmetic::kExact;
    } else if (o.arith == "double") {
        arith = LpArithmetic::kDouble;
    } else if (o.arith != "auto") {
        throw InputError("arithmetic must be auto, exact or double");
    }
    const TvResult r = tv_to_mixture_family_exact(req.mu, req.alphabet, req.k, t_min, ctx.g.cap_lp, arith);
    json js = tv_result_to_json(r);
    js["t_min"] = t_min;
    Csv csv({"Q", "k", "t_min", "distance", "distance_exact", "lp_rows", "lp_cols", "terms"});
    csv.row({fmt(std::uint64_t{req.alphabet}), fmt(std::uint64_t{req.k}), fmt(std::uint64_t{t_min}),
             fmt(r.distance), r.exact_distance ? to_string(*r.exact_distance) : "", fmt(std::uint64_t{r.lp_rows}),
             fmt(std::uint64_t{r.lp_cols}), fmt(std::uint64_t{r.decomposition.terms.size()})});
    emit(ctx, {"decompose", csv.body(), js});
}

struct TableOpts {
    std::string builtin;
    std::string spec;
    std::uint32_t delta = 1;
    bool gapless = false;
    std::string out;
    unsigned threads = 0;
    bool advice_demo = false;
};

void cmd_table(Context &ctx, const TableOpts &o) {
    std::vector<std::pair<std::string, GameSpec>> games;
    if (o.advice_demo) {
        if (!o.builtin.empty() || !o.spec.empty()) {
            throw InputError("--advice-demo runs over the built-in games only");
        }
        for (const auto &n : builtin_game_names()) {
            games.emplace_back(n, builtin_game_spec(n));
        }
    } else {
        if (o.builtin.empty() == o.spec.empty()) {
            throw InputError("give exactly one of --builtin and --spec");
        }
        if (!o.builtin.empty()) {
            games.emplace_back(o.builtin, builtin_game_spec(o.builtin));
        } else {
            games.emplace_back(o.spec, game_spec_from_json(parse_json(read_text(o.spec), o.spec)));
        }
    }
    for (auto &[name, g] : games) {
        g.gapless = g.gapless || o.gapless;
    }
    std::optional<AdviceString> advice;
    if (o.advice_demo) {
        std::vector<GameSpec> specs;
        for (const auto &[name, g] : games) {
            specs.push_back(g);
        }
        advice = build_advice(specs, o.delta);
    }
    Csv csv({"game", "r", "q", "a", "delta", "gapless", "table_bits", "payload_bits", "bytes", "value", "value_bit",
             "advice_bit", "sha256"});
    json js = json::array();
    for (const auto &[name, g] : games) {
        const GameTable t = extract_game_table(g, o.delta, o.threads ? o.threads : default_threads());
        const auto bytes = serialize_table(t);
        if (!(deserialize_table(bytes) == table_image(t))) {
            throw InvariantError("table round trip changed the table");
        }
        const Rational value = table_classical_value(t);
        std::string bit;
        try {
            bit = value_bit(t) ? "1" : "0";
        } catch (const InputError &) {
            bit = "";
        }
        std::string advice_bit;
        if (advice) {
            advice_bit = decide_with_advice(g, o.delta, *advice) ? "1" : "0";
        }
        if (games.size() == 1) {
            const fs::path p = ctx.out_path(o.out, "table.bin");
            if (!p.empty()) {
                write_bytes(p, bytes);
                ctx.record(p);
            }
        }
        const std::uint64_t bits = table_bit_size(t.q, t.a, t.delta, t.gapless);
        csv.row({name, fmt(std::uint64_t{t.r}), fmt(std::uint64_t{t.q}), fmt(std::uint64_t{t.a}),
                 fmt(std::uint64_t{t.delta}), t.gapless ? "true" : "false", fmt(bits), fmt(payload_bits(bytes)),
                 fmt(std::uint64_t{bytes.size()}), to_string(value), bit, advice_bit, sha256_hex(bytes)});
        json r = {{"game", name},
                  {"r", t.r},
                  {"q", t.q},
                  {"a", t.a},
                  {"delta", t.delta},
                  {"gapless", t.gapless},
                  {"table_bits", bits},
                  {"payload_bits", payload_bits(bytes)},
                  {"bytes", bytes.size()},
                  {"value", rational_to_json(value)},
                  {"sha256", sha256_hex(bytes)}};
        if (!bit.empty()) {
            r["value_bit"] = bit == "1";
        }
        if (!advice_bit.empty()) {
            r["advice_bit"] = advice_bit == "1";
        }
        js.push_back(r);
    }
    emit(ctx, {"table", csv.body(), js});
}

struct LedgerOpts {
    std::string config;
    std::string l0;
    std::string sweep;
    std::string mode = "gapless";
    double a0 = 0;
};

void cmd_ledger(Context &ctx, const LedgerOpts &o) {
    LedgerConfig cfg;
    if (!o.config.empty()) {
        cfg = ledger_config_from_json(parse_json(read_text(o.config), o.config));
    }
    cfg.validate();
    LedgerMode mode;
    if (o.mode == "gapless") {
        mode = LedgerMode::kGapless;
    } else if (o.mode == "gapped") {
        mode = LedgerMode::kGapped;
    } else {
        throw InputError("ledger mode must be gapless or gapped");
    }
    auto recurse = [&](long double l0) {
        return mode == LedgerMode::kGapless ? gapless_recursion(l0, cfg) : gapped_recursion(l0, cfg);
    };
    if (o.l0.empty() == o.sweep.empty()) {
        throw InputError("give exactly one of --l0 and --sweep");
    }
    if (!o.l0.empty()) {
        const long double l0 = parse_length(o.l0);
        const Trajectory t = recurse(l0);
        Csv csv({"mode", "l0", "step", "l", "q0", "answer_length"});
        json steps = json::array();
        for (std::size_t i = 0; i < t.steps.size(); i++) {
            Trajectory prefix = t;
            prefix.steps.resize(i + 1);
            const long double ans = answer_length_accounting(o.a0, prefix, mode, cfg);
            csv.row({o.mode, fmt(static_cast<double>(l0)), fmt(std::uint64_t{i + 1}), fmt(t.steps[i]), fmt(t.q0),
                     fmt(static_cast<double>(ans))});
            steps.push_back({{"step", i + 1}, {"l", t.steps[i]}, {"answer_length", static_cast<double>(ans)}});
        }
        json js = {{"mode", o.mode},
                   {"l0", static_cast<double>(l0)},
                   {"q0", t.q0},
                   {"iterations", t.iterations()},
                   {"steps", steps},
                   {"config", ledger_config_to_json(cfg)}};
        if (t.bound_checked) {
            js["bound"] = t.bound;
            js["bound_holds"] = t.bound_holds;
        }
        emit(ctx, {"ledger", csv.body(), js});
        return;
    }
    const auto exps = parse_range(o.sweep, "log2 l0");
    Csv csv({"mode", "log2_l0", "iterations", "log_star", "iteration_cap", "within_cap", "bound", "bound_holds",
             "final_l"});
    json js = json::array();
    for (auto e : exps) {
        if (e > 16000) {
            throw InputError("log2 l0 too large");
        }
        const long double l0 = std::ldexp(1.0L, static_cast<int>(e));
        const Trajectory t = recurse(l0);
        const unsigned ls = log_star(l0);
        const std::uint64_t cap = 3ull * ls;
        const bool within = t.iterations() <= cap;
        const double final_l = t.steps.empty() ? static_cast<double>(l0) : static_cast<double>(t.steps.back());
        csv.row({o.mode, fmt(e), fmt(std::uint64_t{t.iterations()}), fmt(std::uint64_t{ls}), fmt(cap),
                 within ? "true" : "false", t.bound_checked ? fmt(t.bound) : "",
                 t.bound_checked ? (t.bound_holds ? "true" : "false") : "", fmt(final_l)});
        json r = {{"log2_l0", e},   {"iterations", t.iterations()}, {"log_star", ls},
                  {"iteration_cap", cap}, {"within_cap", within}, {"final_l", final_l}};
        if (t.bound_checked) {
            r["bound"] = t.bound;
            r["bound_holds"] = t.bound_holds;
        }
        js.push_back(r);
    }
    emit(ctx, {"ledger", csv.body(), js});
}

struct LowerBoundOpts {
    double gamma = 0.4;
    double c = 0.9;
    double eps = 0.05;
    std::uint32_t delta = 1;
    std::string ns;
};

void cmd_lower_bound(Context &ctx, const LowerBoundOpts &o) {
    std::vector<std::uint64_t> ns;
    if (o.ns.empty()) {
        for (unsigned e = 1; e <= 32; e++) {
            ns.push_back(std::uint64_t{1} << e);
        }
    } else {
        ns = parse_range(o.ns, "n");
    }
    const MarginReport r = lower_bound_margin(o.gamma, o.c, o.eps, o.delta, ns);
    Csv csv({"n", "qa", "left", "right", "dominates", "n0"});
    json rows = json::array();
    for (const auto &row : r.rows) {
        csv.row({fmt(row.n), fmt(row.qa), fmt(static_cast<double>(row.left)), fmt(static_cast<double>(row.right)),
                 row.dominates ? "true" : "false", fmt(r.n0)});
        rows.push_back({{"n", row.n},
                        {"qa", row.qa},
                        {"left", static_cast<double>(row.left)},
                        {"right", static_cast<double>(row.right)},
                        {"dominates", row.dominates}});
    }
    json js = {{"gamma", o.gamma}, {"c", o.c}, {"eps", o.eps}, {"delta", o.delta}, {"n0", r.n0}, {"rows", rows}};
    emit(ctx, {"lower_bound", csv.body(), js});
}

int fail(std::ostream &err, int code, const char *kind, const std::string &msg) {
    std::string clean;
    for (char c : msg) {
        clean += (c == '\n' || c == '"') ? '\'' : c;
    }
    err << "error: code=" << code << " kind=" << kind << " message=\"" << clean << "\"\n";
    return code;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Context ctx;
    ctx.out = &out;
    ctx.err = &err;
    ctx.args = args;
    ctx.started_at = utc_now();

    CLI::App app{"Desk-scale experiments for free-game BellQMA protocols.", "qfree"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", ctx.g.seed, "master seed for randomized experiments");
    app.add_option("--out-dir", ctx.g.out_dir, "write results and a manifest here");
    app.add_option("--cap-dim", ctx.g.cap_dim, "largest witness dimension for exact simulation")
        ->capture_default_str();
    app.add_option("--cap-lp", ctx.g.cap_lp, "largest LP size")->capture_default_str();
    app.add_option("--format", ctx.g.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    ReduceOpts reduce;
    auto *s_reduce = app.add_subcommand("reduce", "3-SAT (DIMACS) to generalized 7-coloring");
    s_reduce->add_option("cnf", reduce.cnf, "DIMACS CNF file")->required();
    s_reduce->add_option("-o,--out", reduce.out, "instance JSON path");

    SimulateOpts sim;
    auto *s_sim = app.add_subcommand("simulate", "acceptance probabilities of the two-witness protocol");
    add_instance_opts(s_sim, sim.inst);
    add_adversary_opts(s_sim, sim.adv);
    s_sim->add_option("-k", sim.k, "copies per witness")->capture_default_str();
    s_sim->add_option("--eta", sim.eta, "uniformity slack in (0, 1)")->capture_default_str();
    s_sim->add_option("--mode", sim.mode, "exact or sample")->capture_default_str();
    s_sim->add_option("--shots", sim.shots, "samples in sample mode")->capture_default_str();

    SweepOpts sweep;
    auto *s_sweep = app.add_subcommand("sweep", "parameter grid over k, eta and adversary strength");
    s_sweep->add_option("--kind", sweep.kind, "protocol or trend")->capture_default_str();
    add_instance_opts(s_sweep, sweep.inst);
    add_adversary_opts(s_sweep, sweep.adv);
    s_sweep->add_option("--k-list", sweep.k_list, "k values: a,b,c or lo:hi")->capture_default_str();
    s_sweep->add_option("--eta-list", sweep.eta_list, "eta values")->capture_default_str();
    s_sweep->add_option("--strength-list", sweep.strength_list, "protocol: adversary strengths (bias)")
        ->capture_default_str();
    s_sweep->add_option("--eps-list", sweep.eps_list, "trend: uniformity failure probabilities")
        ->capture_default_str();
    s_sweep->add_option("--mode", sweep.mode, "exact or sample")->capture_default_str();
    s_sweep->add_option("--shots", sweep.shots, "samples per point in sample mode")->capture_default_str();
    s_sweep->add_option("--question-dim", sweep.question_dim, "trend: Q")->capture_default_str();
    s_sweep->add_option("--answer-dim", sweep.answer_dim, "trend: K'")->capture_default_str();
    s_sweep->add_option("--threads", sweep.threads, "worker threads (0 = all cores)");

    GameValueOpts gv;
    auto *s_gv = app.add_subcommand("game-value", "exact classical value of a (k, l) consistency game");
    s_gv->add_option("spec", gv.spec, "game spec JSON")->required();
    s_gv->add_option("--cap-strategies", gv.cap, "largest strategy enumeration")->capture_default_str();

    DecomposeOpts dec;
    auto *s_dec = app.add_subcommand("decompose", "distance to the uniform-on-T mixture family");
    s_dec->add_option("dist", dec.dist, "distribution JSON")->required();
    s_dec->add_option("--t-min", dec.t_min, "smallest |T|");
    s_dec->add_option("--eta", dec.eta, "derive t_min from eta and --answer-dim");
    s_dec->add_option("--answer-dim", dec.answer_dim, "K'");
    s_dec->add_option("--arith", dec.arith, "auto, exact or double")->capture_default_str();

    TableOpts tab;
    auto *s_tab = app.add_subcommand("table", "serialize a game table and report its size");
    s_tab->add_option("--builtin", tab.builtin, "toy-equal or toy-half");
    s_tab->add_option("--spec", tab.spec, "game spec JSON");
    s_tab->add_option("--delta", tab.delta, "extra precision bits")->capture_default_str();
    s_tab->add_flag("--gapless", tab.gapless, "omit the probability column");
    s_tab->add_option("-o,--out", tab.out, "binary table path");
    s_tab->add_option("--threads", tab.threads, "worker threads (0 = all cores)");
    s_tab->add_flag("--advice-demo", tab.advice_demo, "decide the built-in games through an advice string");

    LedgerOpts led;
    auto *s_led = app.add_subcommand("ledger", "question-length recursion of the compression loop");
    s_led->add_option("--config", led.config, "ledger config JSON");
    s_led->add_option("--l0", led.l0, "starting length, e.g. 1e6 or 2^20");
    s_led->add_option("--sweep", led.sweep, "log2 l0 values: a,b or lo:hi");
    s_led->add_option("--mode", led.mode, "gapless or gapped")->capture_default_str();
    s_led->add_option("--a0", led.a0, "starting answer length")->capture_default_str();

    LowerBoundOpts lb;
    auto *s_lb = app.add_subcommand("lower-bound", "where c n + log eps overtakes the table size");
    s_lb->add_option("--gamma", lb.gamma)->capture_default_str();
    s_lb->add_option("--c", lb.c)->capture_default_str();
    s_lb->add_option("--eps", lb.eps)->capture_default_str();
    s_lb->add_option("--delta", lb.delta)->capture_default_str();
    s_lb->add_option("--n", lb.ns, "n values: a,b,c or lo:hi (default 2^1..2^32)");

    std::string manifest;
    auto *s_ver = app.add_subcommand("verify", "check the digests of a run manifest");
    s_ver->add_option("manifest", manifest, "manifest.json")->required();

    try {
        ctx.level = level_from_env();
        std::vector<std::string> rev(args.rbegin(), args.rend());
        try {
            app.parse(rev);
        } catch (const CLI::CallForHelp &e) {
            return app.exit(e, out, err);
        } catch (const CLI::CallForAllHelp &e) {
            return app.exit(e, out, err);
        } catch (const CLI::ParseError &e) {
            return fail(err, 2, "input", e.what());
        }
        ctx.g.has_seed = app.get_option("--seed")->count() > 0;
        if (ctx.g.cap_dim == 0 || ctx.g.cap_lp == 0) {
            throw InputError("caps must be positive");
        }
        for (const auto *opt : app.get_options()) {
            if (opt->count() > 0 && !opt->get_name().empty() && opt->get_name() != "--help") {
                ctx.config[opt->get_name()] = opt->as<std::string>();
            }
        }
        CLI::App *sub = app.get_subcommands().front();
        ctx.config["subcommand"] = sub->get_name();
        for (const auto *opt : sub->get_options()) {
            if (opt->count() > 0 && opt->get_name() != "--help") {
                ctx.config[opt->get_name()] = opt->as<std::string>();
            }
        }
        ctx.log(Level::kDebug, "config " + ctx.config.dump());
        if (s_reduce->parsed()) {
            cmd_reduce(ctx, reduce);
        } else if (s_sim->parsed()) {
            cmd_simulate(ctx, sim);
        } else if (s_sweep->parsed()) {
            cmd_sweep(ctx, sweep);
        } else if (s_gv->parsed()) {
            cmd_game_value(ctx, gv);
        } else if (s_dec->parsed()) {
            cmd_decompose(ctx, dec);
        } else if (s_tab->parsed()) {
            cmd_table(ctx, tab);
        } else if (s_led->parsed()) {
            cmd_ledger(ctx, led);
        } else if (s_lb->parsed()) {
            cmd_lower_bound(ctx, lb);
        } else if (s_ver->parsed()) {
            verify_manifest(manifest);
            out << "ok\n";
            return 0;
        }
        write_manifest(ctx);
        return 0;
    } catch (const InputError &e) {
        return fail(err, 2, "input", e.what());
    } catch (const CapError &e) {
        return fail(err, 3, "cap", e.what());
    } catch (const InvariantError &e) {
        return fail(err, 4, "invariant", e.what());
    } catch (const json::exception &e) {
        return fail(err, 2, "input", e.what());
    } catch (const std::bad_alloc &) {
        return fail(err, 3, "cap", "out of memory");
    } catch (const std::exception &e) {
        return fail(err, 4, "invariant", e.what());
    }
}

}  // namespace qfree::cli
