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

#include "qfree/analysis.h"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "qfree/common.h"
#include "qfree/simplex.h"

namespace qfree {

std::map<Outcome, double> MixtureDecomposition::expand() const {
    std::map<Outcome, double> out;
    for (const auto &t : terms) {
        const std::size_t u = t.uniform_coords.size();
        std::vector<bool> is_uniform(k, false);
        for (std::size_t c : t.uniform_coords) {
            is_uniform[c] = true;
        }
        const std::uint64_t cells = checked_pow(alphabet, u, kDefaultLpCap, "mixture expansion");
        for (const auto &[z, p] : t.junk) {
            const double w = t.weight * p / static_cast<double>(cells);
            for (std::uint64_t c = 0; c < cells; c++) {
                Outcome x(k);
                std::uint64_t rem = c;
                for (std::size_t i = u; i-- > 0;) {
                    x[t.uniform_coords[i]] = rem % alphabet;
                    rem /= alphabet;
                }
                std::size_t zi = 0;
                for (std::size_t i = 0; i < k; i++) {
                    if (!is_uniform[i]) {
                        x[i] = z[zi++];
                    }
                }
                out[x] += w;
            }
        }
    }
    return out;
}

namespace {

struct Block {
    std::uint64_t mask;
    std::vector<std::size_t> coords;
    std::vector<std::size_t> rest;
    std::size_t first_var;
    std::size_t count;
};

std::vector<Block> blocks_for(std::size_t alphabet, std::size_t k, std::size_t t_min, std::uint64_t cap,
                              std::uint64_t atoms) {
    std::vector<Block> out;
    std::size_t var = 0;
    std::uint64_t work = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); mask++) {
        if (static_cast<std::size_t>(std::popcount(mask)) < t_min) {
            continue;
        }
        Block b{mask, {}, {}, var, 0};
        for (std::size_t i = 0; i < k; i++) {
            ((mask >> i) & 1 ? b.coords : b.rest).push_back(i);
        }
        b.count = checked_pow(alphabet, b.rest.size(), cap, "mixture LP");
        var += b.count;
        work += b.count;
        if (work > cap / atoms + 1) {
            throw CapError("mixture LP: size exceeds cap " + std::to_string(cap));
        }
        out.push_back(std::move(b));
    }
    return out;
}

template <class T>
struct LpData {
    std::vector<std::vector<T>> a;
    std::vector<T> b;
    std::vector<T> c;
};

template <class T>
LpData<T> build_lp(const std::vector<T> &mu, std::size_t alphabet, std::size_t k, const std::vector<Block> &blocks,
                   std::size_t num_nu) {
    const std::size_t atoms = mu.size();
    const std::size_t cols = num_nu + 2 * atoms;
    LpData<T> lp;
    lp.a.assign(atoms + 1, std::vector<T>(cols, T(0)));
    lp.b = mu;
    lp.b.push_back(T(1));
    lp.c.assign(cols, T(0));
    const RegisterLayout full = RegisterLayout::plain(std::vector<std::size_t>(k, alphabet));
    for (const Block &blk : blocks) {
        const std::size_t u = blk.coords.size();
        const std::uint64_t cells = checked_pow(alphabet, u, atoms, "mixture LP");
        const T share = T(1) / T(static_cast<long>(cells));
        for (std::size_t z = 0; z < blk.count; z++) {
            std::vector<std::size_t> digits(k, 0);
            std::size_t rem = z;
            for (std::size_t i = blk.rest.size(); i-- > 0;) {
                digits[blk.rest[i]] = rem % alphabet;
                rem /= alphabet;
            }
            for (std::uint64_t c = 0; c < cells; c++) {
                std::uint64_t r2 = c;
                for (std::size_t i = u; i-- > 0;) {
                    digits[blk.coords[i]] = r2 % alphabet;
                    r2 /= alphabet;
                }
                lp.a[full.encode(digits)][blk.first_var + z] = share;
            }
            lp.a[atoms][blk.first_var + z] = T(1);
        }
    }
    for (std::size_t x = 0; x < atoms; x++) {
        lp.a[x][num_nu + x] = T(1);
        lp.a[x][num_nu + atoms + x] = T(-1);
        lp.c[num_nu + x] = T(1) / T(2);
        lp.c[num_nu + atoms + x] = T(1) / T(2);
    }
    return lp;
}

void fill_decomposition(TvResult &res, const std::vector<double> &x, std::size_t alphabet, std::size_t k,
                        const std::vector<Block> &blocks) {
    res.decomposition.k = k;
    res.decomposition.alphabet = alphabet;
    for (const Block &blk : blocks) {
        double w = 0;
        for (std::size_t z = 0; z < blk.count; z++) {
            w += std::max(0.0, x[blk.first_var + z]);
        }
        if (w <= 0) {
            continue;
        }
        MixtureDecomposition::Term t;
        t.uniform_coords = blk.coords;
        t.weight = w;
        for (std::size_t z = 0; z < blk.count; z++) {
            const double v = std::max(0.0, x[blk.first_var + z]);
            if (v <= 0) {
                continue;
            }
            Outcome zz(blk.rest.size());
            std::size_t rem = z;
            for (std::size_t i = zz.size(); i-- > 0;) {
                zz[i] = rem % alphabet;
                rem /= alphabet;
            }
            t.junk[zz] = v / w;
        }
        res.decomposition.terms.push_back(std::move(t));
    }
}

template <class P>
std::vector<P> dense_mu(const std::map<Outcome, P> &mu, std::size_t alphabet, std::size_t k, std::uint64_t cap) {
    if (alphabet == 0 || k == 0) {
        throw InputError("distribution needs a positive alphabet and length");
    }
    if (k > 62) {
        throw InputError("k must be at most 62");
    }
    const std::uint64_t atoms = checked_pow(alphabet, k, cap, "mixture LP");
    const RegisterLayout full = RegisterLayout::plain(std::vector<std::size_t>(k, alphabet));
    std::vector<P> out(atoms, P(0));
    double total = 0;
    for (const auto &[x, p] : mu) {
        if (x.size() != k) {
            throw InputError("outcome has length " + std::to_string(x.size()) + ", expected " + std::to_string(k));
        }
        for (std::size_t v : x) {
            if (v >= alphabet) {
                throw InputError("outcome value out of range");
            }
        }
        if (p < 0) {
            throw InputError("negative probability in distribution");
        }
        out[full.encode(x)] += p;
        if constexpr (std::is_same_v<P, double>) {
            total += p;
        } else {
            total += to_double(p);
        }
    }
    if (std::abs(total - 1) > 1e-9) {
        throw InputError("distribution sums to " + std::to_string(total) + ", not 1");
    }
    return out;
}

TvResult solve_tv(const std::vector<Rational> &mu_exact, const std::vector<double> &mu_real, std::size_t alphabet,
                  std::size_t k, std::size_t t_min, std::uint64_t cap, LpArithmetic arithmetic) {
    if (t_min > k) {
        throw InputError("t_min exceeds k: the mixture family is empty");
    }
    const std::uint64_t atoms = mu_real.size();
    const auto blocks = blocks_for(alphabet, k, t_min, cap, atoms);
    const std::size_t num_nu = blocks.back().first_var + blocks.back().count;
    TvResult res;
    res.lp_rows = atoms + 1;
    res.lp_cols = num_nu + 2 * atoms;
    bool exact = arithmetic == LpArithmetic::kExact;
    if (arithmetic == LpArithmetic::kAuto) {
        exact = res.lp_rows * res.lp_cols <= 6000;
    }
    std::vector<double> x;
    if (exact) {
        const auto lp = build_lp<Rational>(mu_exact, alphabet, k, blocks, num_nu);
        const auto r = lp::solve_exact(lp.a, lp.b, lp.c);
        if (r.status != lp::Status::kOptimal) {
            throw InvariantError("mixture LP did not reach an optimum");
        }
        res.exact_distance = r.objective;
        res.distance = to_double(r.objective);
        for (const auto &v : r.x) {
            x.push_back(to_double(v));
        }
    } else {
        const auto lp = build_lp<double>(mu_real, alphabet, k, blocks, num_nu);
        const auto r = lp::solve_double(lp.a, lp.b, lp.c);
        if (r.status != lp::Status::kOptimal) {
            throw InvariantError("mixture LP did not reach an optimum");
        }
        res.distance = std::clamp(r.objective, 0.0, 1.0);
        x = r.x;
    }
    if (res.distance < -1e-9 || res.distance > 1 + 1e-9) {
        throw InvariantError("total-variation distance outside [0, 1]");
    }
    res.decomposition.distance = res.distance;
    fill_decomposition(res, x, alphabet, k, blocks);
    return res;
}

}  // namespace

TvResult tv_to_mixture_family(const std::map<Outcome, double> &mu, std::size_t alphabet, std::size_t k,
                              std::size_t t_min, std::uint64_t cap, LpArithmetic arithmetic) {
    const auto real = dense_mu(mu, alphabet, k, cap);
    std::vector<Rational> exact;
    for (double p : real) {
        exact.push_back(rational_from_double(p));
    }
    return solve_tv(exact, real, alphabet, k, t_min, cap, arithmetic);
}

TvResult tv_to_mixture_family_exact(const std::map<Outcome, Rational> &mu, std::size_t alphabet, std::size_t k,
                                    std::size_t t_min, std::uint64_t cap, LpArithmetic arithmetic) {
    const auto exact = dense_mu(mu, alphabet, k, cap);
    std::vector<double> real;
    for (const auto &p : exact) {
        real.push_back(to_double(p));
    }
    return solve_tv(exact, real, alphabet, k, t_min, cap,
                    arithmetic == LpArithmetic::kAuto ? LpArithmetic::kExact : arithmetic);
}

namespace {

Eigen::MatrixXcd to_eigen(const Matrix &m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); i++) {
        for (std::size_t j = 0; j < m.cols(); j++) {
            e(i, j) = m(i, j);
        }
    }
    return e;
}

// Top eigenpair of a Hermitian matrix.
std::pair<double, Eigen::VectorXcd> top_eigen(const Eigen::MatrixXcd &h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success) {
        throw InvariantError("eigensolver failed");
    }
    const Eigen::Index last = h.rows() - 1;
    return {es.eigenvalues()(last), es.eigenvectors().col(last)};
}

Eigen::VectorXcd random_unit(std::size_t d, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXcd v(d);
    for (std::size_t i = 0; i < d; i++) {
        const double re = g(rng);
        const double im = g(rng);
        v(i) = cplx(re, im);
    }
    return v / v.norm();
}

}  // namespace

double product_value(const Matrix &m, std::span<const cplx> a, std::span<const cplx> b) {
    const std::size_t da = a.size();
    const std::size_t db = b.size();
    if (m.rows() != da * db || m.cols() != da * db) {
        throw InputError("product state does not match the operator dimension");
    }
    std::vector<cplx> v(da * db);
    for (std::size_t i = 0; i < da; i++) {
        for (std::size_t j = 0; j < db; j++) {
            v[i * db + j] = a[i] * b[j];
        }
    }
    cplx s = 0;
    for (std::size_t r = 0; r < v.size(); r++) {
        cplx row = 0;
        for (std::size_t c = 0; c < v.size(); c++) {
            row += m(r, c) * v[c];
        }
        s += std::conj(v[r]) * row;
    }
    return s.real();
}

double max_eigenvalue(const Matrix &m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw InputError("eigenvalue of a non-square matrix");
    }
    return top_eigen(to_eigen(m)).first;
}

SepResult hsep_seesaw(const Matrix &m, std::size_t dim_a, std::size_t dim_b, const SepOptions &opts) {
    if (dim_a == 0 || dim_b == 0 || m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
        throw InputError("dimensions " + std::to_string(dim_a) + " x " + std::to_string(dim_b) +
                         " do not match the operator");
    }
    double scale = 1;
    for (cplx x : m.data()) {
        scale = std::max(scale, std::abs(x));
    }
    if (m.max_abs_diff(m.adjoint()) > 1e-9 * scale) {
        throw InputError("operator is not Hermitian");
    }
    if (opts.restarts == 0) {
        throw InputError("seesaw needs at least one restart");
    }
    const Eigen::MatrixXcd e = to_eigen(m);
    const std::size_t da = dim_a;
    const std::size_t db = dim_b;
    SepResult best;
    best.value = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < opts.restarts; r++) {
        std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                          static_cast<std::uint32_t>(r)};
        std::mt19937_64 rng(seq);
        Eigen::VectorXcd b = random_unit(db, rng);
        Eigen::VectorXcd a(da);
        double prev = -std::numeric_limits<double>::infinity();
        std::vector<double> trace;
        bool converged = false;
        std::size_t it = 0;
        auto step_check = [&](double v) {
            if (!trace.empty() && v < trace.back() - 1e-10 * scale) {
                throw InvariantError("seesaw objective decreased from " + std::to_string(trace.back()) + " to " +
                                     std::to_string(v));
            }
            trace.push_back(v);
        };
        for (; it < opts.max_iters; it++) {
            Eigen::MatrixXcd ha = Eigen::MatrixXcd::Zero(da, da);
            for (std::size_t i = 0; i < da; i++) {
                for (std::size_t j = 0; j < da; j++) {
                    ha(i, j) = b.adjoint() * e.block(i * db, j * db, db, db) * b;
                }
            }
            auto [va, veca] = top_eigen(ha);
            a = veca;
            step_check(va);
            Eigen::MatrixXcd hb = Eigen::MatrixXcd::Zero(db, db);
            for (std::size_t i = 0; i < da; i++) {
                for (std::size_t j = 0; j < da; j++) {
                    hb += std::conj(a(i)) * a(j) * e.block(i * db, j * db, db, db);
                }
            }
            auto [vb, vecb] = top_eigen(hb);
            b = vecb;
            step_check(vb);
            if (vb - prev <= opts.tol) {
                converged = true;
                it++;
                break;
            }
            prev = vb;
        }
        std::vector<cplx> av(a.data(), a.data() + da);
        std::vector<cplx> bv(b.data(), b.data() + db);
        const double value = product_value(m, av, bv);
        if (value > best.value) {
            best.value = value;
            best.a = std::move(av);
            best.b = std::move(bv);
            best.iterations = it;
            best.converged = converged;
            best.best_restart = r;
            best.trace = std::move(trace);
        }
    }
    return best;
}

SepResult hsep_seesaw(const ProductAcceptOperator &op, const SepOptions &opts) {
    op.validate();
    const auto &t = op.terms.front();
    return hsep_seesaw(to_dense(op), t.alice.layout.total_dim(), t.bob.layout.total_dim(), opts);
}

}  // namespace qfree
