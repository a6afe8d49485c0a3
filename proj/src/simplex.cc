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

#include "qfree/simplex.h"

#include <cmath>

#include "qfree/common.h"

namespace qfree::lp {

namespace {

template <class T>
struct Arith;

template <>
struct Arith<Rational> {
    Rational tol;
    bool zero(const Rational &x) const {
        return sgn(x) == 0;
    }
    bool neg(const Rational &x) const {
        return sgn(x) < 0;
    }
    bool pos(const Rational &x) const {
        return sgn(x) > 0;
    }
    void tidy(Rational &x) const {
        x.canonicalize();
    }
};

template <>
struct Arith<double> {
    double tol;
    bool zero(double x) const {
        return std::abs(x) <= tol;
    }
    bool neg(double x) const {
        return x < -tol;
    }
    bool pos(double x) const {
        return x > tol;
    }
    void tidy(double &x) const {
        if (std::abs(x) <= tol * 1e-3) {
            x = 0;
        }
    }
};

template <class T>
class Tableau {
   public:
    Tableau(const std::vector<std::vector<T>> &a, const std::vector<T> &b, Arith<T> ar)
        : m_(b.size()), n_(a.empty() ? 0 : a[0].size()), ar_(ar) {
        cols_ = n_ + m_ + 1;
        t_.assign((m_ + 1) * cols_, T(0));
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; i++) {
            if (a[i].size() != n_) {
                throw InputError("LP constraint rows have unequal lengths");
            }
            const bool flip = ar_.neg(b[i]);
            for (std::size_t j = 0; j < n_; j++) {
                at(i, j) = flip ? T(-a[i][j]) : a[i][j];
            }
            at(i, n_ + i) = T(1);
            rhs(i) = flip ? T(-b[i]) : b[i];
            basis_[i] = n_ + i;
        }
    }

    T &at(std::size_t i, std::size_t j) {
        return t_[i * cols_ + j];
    }
    T &rhs(std::size_t i) {
        return t_[i * cols_ + cols_ - 1];
    }
    T &cost(std::size_t j) {
        return t_[m_ * cols_ + j];
    }

    void set_cost(const std::vector<T> &c) {
        for (std::size_t j = 0; j < cols_; j++) {
            cost(j) = j < c.size() ? c[j] : T(0);
        }
        for (std::size_t i = 0; i < m_; i++) {
            const T cb = basis_[i] < c.size() ? c[basis_[i]] : T(0);
            if (ar_.zero(cb)) {
                continue;
            }
            for (std::size_t j = 0; j < cols_; j++) {
                if (!ar_.zero(at(i, j))) {
                    cost(j) -= cb * at(i, j);
                    ar_.tidy(cost(j));
                }
            }
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        const T p = at(r, c);
        for (std::size_t j = 0; j < cols_; j++) {
            if (!ar_.zero(at(r, j))) {
                at(r, j) /= p;
                ar_.tidy(at(r, j));
            }
        }
        at(r, c) = T(1);
        for (std::size_t i = 0; i <= m_; i++) {
            if (i == r) {
                continue;
            }
            const T f = t_[i * cols_ + c];
            if (ar_.zero(f)) {
                continue;
            }
            for (std::size_t j = 0; j < cols_; j++) {
                const T &rj = at(r, j);
                if (!ar_.zero(rj)) {
                    T &x = t_[i * cols_ + j];
                    x -= f * rj;
                    ar_.tidy(x);
                }
            }
            t_[i * cols_ + c] = T(0);
        }
        basis_[r] = c;
        pivots_++;
    }

    // Runs Bland's rule over columns < `limit`. Returns false if unbounded.
    bool optimize(std::size_t limit) {
        while (true) {
            std::size_t enter = limit;
            for (std::size_t j = 0; j < limit; j++) {
                if (ar_.neg(cost(j))) {
                    enter = j;
                    break;
                }
            }
            if (enter == limit) {
                return true;
            }
            std::size_t leave = m_;
            T best{};
            for (std::size_t i = 0; i < m_; i++) {
                if (!ar_.pos(at(i, enter))) {
                    continue;
                }
                T ratio = rhs(i) / at(i, enter);
                if (leave == m_ || ratio < best || (!(best < ratio) && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m_) {
                return false;
            }
            pivot(leave, enter);
        }
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < m_; i++) {
            if (basis_[i] < n_) {
                continue;
            }
            for (std::size_t j = 0; j < n_; j++) {
                if (!ar_.zero(at(i, j))) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    std::size_t m_;
    std::size_t n_;
    std::size_t cols_ = 0;
    std::size_t pivots_ = 0;
    Arith<T> ar_;
    std::vector<T> t_;
    std::vector<std::size_t> basis_;
};

template <class T>
Result<T> solve(const std::vector<std::vector<T>> &a, const std::vector<T> &b, const std::vector<T> &c,
                Arith<T> ar) {
    if (a.size() != b.size()) {
        throw InputError("LP has mismatched constraint and right-hand-side counts");
    }
    const std::size_t n = c.size();
    for (const auto &row : a) {
        if (row.size() != n) {
            throw InputError("LP constraint row length differs from the objective length");
        }
    }
    Tableau<T> tab(a, b, ar);
    Result<T> res;
    std::vector<T> phase1(n + b.size(), T(0));
    for (std::size_t i = 0; i < b.size(); i++) {
        phase1[n + i] = T(1);
    }
    tab.set_cost(phase1);
    tab.optimize(n + b.size());
    T infeas = -tab.cost(tab.cols_ - 1);
    if (ar.pos(infeas)) {
        res.status = Status::kInfeasible;
        res.pivots = tab.pivots_;
        return res;
    }
    tab.drive_out_artificials();
    tab.set_cost(c);
    if (!tab.optimize(n)) {
        res.status = Status::kUnbounded;
        res.pivots = tab.pivots_;
        return res;
    }
    res.status = Status::kOptimal;
    res.x.assign(n, T(0));
    for (std::size_t i = 0; i < b.size(); i++) {
        if (tab.basis_[i] < n) {
            res.x[tab.basis_[i]] = tab.rhs(i);
        }
    }
    res.objective = T(0);
    for (std::size_t j = 0; j < n; j++) {
        res.objective += c[j] * res.x[j];
    }
    res.pivots = tab.pivots_;
    return res;
}

}  // namespace

Result<Rational> solve_exact(const std::vector<std::vector<Rational>> &a, const std::vector<Rational> &b,
                             const std::vector<Rational> &c) {
    return solve<Rational>(a, b, c, Arith<Rational>{Rational(0)});
}

Result<double> solve_double(const std::vector<std::vector<double>> &a, const std::vector<double> &b,
                            const std::vector<double> &c, double tol) {
    return solve<double>(a, b, c, Arith<double>{tol});
}

}  // namespace qfree::lp
