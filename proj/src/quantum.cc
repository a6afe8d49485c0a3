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

#include "qfree/quantum.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "qfree/common.h"
#include "qfree/kernels.h"

namespace qfree {

RegisterLayout::RegisterLayout(std::vector<Register> registers) : regs_(std::move(registers)) {
    strides_.assign(regs_.size(), 1);
    total_ = 1;
    for (std::size_t i = regs_.size(); i-- > 0;) {
        if (regs_[i].dim == 0) {
            throw InputError("register dimension must be positive");
        }
        strides_[i] = total_;
        total_ *= regs_[i].dim;
    }
}

RegisterLayout RegisterLayout::protocol(std::size_t question_dim, std::size_t answer_dim, std::size_t copies) {
    std::vector<Register> regs;
    for (std::size_t c = 0; c < copies; c++) {
        regs.push_back({RegisterRole::kQuestion, question_dim, c});
        regs.push_back({RegisterRole::kAnswer, answer_dim, c});
    }
    return RegisterLayout(std::move(regs));
}

RegisterLayout RegisterLayout::plain(const std::vector<std::size_t> &dims) {
    std::vector<Register> regs;
    for (std::size_t i = 0; i < dims.size(); i++) {
        regs.push_back({RegisterRole::kQuestion, dims[i], i});
    }
    return RegisterLayout(std::move(regs));
}

std::vector<std::size_t> RegisterLayout::decode(std::size_t index) const {
    std::vector<std::size_t> d(regs_.size());
    for (std::size_t i = 0; i < regs_.size(); i++) {
        d[i] = digit(index, i);
    }
    return d;
}

std::size_t RegisterLayout::encode(std::span<const std::size_t> digits) const {
    if (digits.size() != regs_.size()) {
        throw InputError("digit count does not match register count");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < regs_.size(); i++) {
        if (digits[i] >= regs_[i].dim) {
            throw InputError("register value out of range");
        }
        idx += digits[i] * strides_[i];
    }
    return idx;
}

RegisterLayout RegisterLayout::concat(const RegisterLayout &other) const {
    std::vector<Register> regs = regs_;
    regs.insert(regs.end(), other.regs_.begin(), other.regs_.end());
    return RegisterLayout(std::move(regs));
}

RegisterLayout RegisterLayout::select(std::span<const std::size_t> regs) const {
    std::vector<Register> out;
    for (std::size_t r : regs) {
        if (r >= regs_.size()) {
            throw InputError("register index out of range");
        }
        out.push_back(regs_[r]);
    }
    return RegisterLayout(std::move(out));
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; i++) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::outer(std::span<const cplx> v) {
    Matrix m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); i++) {
        for (std::size_t j = 0; j < v.size(); j++) {
            m(i, j) = v[i] * std::conj(v[j]);
        }
    }
    return m;
}

Matrix Matrix::operator*(const Matrix &o) const {
    if (cols_ != o.rows_) {
        throw InputError("matrix product dimension mismatch");
    }
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; i++) {
        for (std::size_t k = 0; k < cols_; k++) {
            const cplx a = (*this)(i, k);
            if (a == cplx{}) {
                continue;
            }
            for (std::size_t j = 0; j < o.cols_; j++) {
                r(i, j) += a * o(k, j);
            }
        }
    }
    return r;
}

Matrix Matrix::operator+(const Matrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw InputError("matrix sum dimension mismatch");
    }
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); i++) {
        r.data_[i] += o.data_[i];
    }
    return r;
}

Matrix Matrix::operator-(const Matrix &o) const {
    return *this + o.scaled(-1.0);
}

Matrix Matrix::scaled(cplx s) const {
    Matrix r = *this;
    for (auto &x : r.data_) {
        x *= s;
    }
    return r;
}

Matrix Matrix::adjoint() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; i++) {
        for (std::size_t j = 0; j < cols_; j++) {
            r(j, i) = std::conj((*this)(i, j));
        }
    }
    return r;
}

Matrix Matrix::kron(const Matrix &o) const {
    Matrix r(rows_ * o.rows_, cols_ * o.cols_);
    for (std::size_t i = 0; i < rows_; i++) {
        for (std::size_t j = 0; j < cols_; j++) {
            const cplx a = (*this)(i, j);
            if (a == cplx{}) {
                continue;
            }
            for (std::size_t k = 0; k < o.rows_; k++) {
                for (std::size_t l = 0; l < o.cols_; l++) {
                    r(i * o.rows_ + k, j * o.cols_ + l) = a * o(k, l);
                }
            }
        }
    }
    return r;
}

double Matrix::max_abs_diff(const Matrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw InputError("matrix comparison dimension mismatch");
    }
    double m = 0;
    for (std::size_t i = 0; i < data_.size(); i++) {
        m = std::max(m, std::abs(data_[i] - o.data_[i]));
    }
    return m;
}

StateVector::StateVector(RegisterLayout layout, std::vector<cplx> amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
    if (amps_.size() != layout_.total_dim()) {
        throw InputError("amplitude count " + std::to_string(amps_.size()) + " does not match layout dimension " +
                         std::to_string(layout_.total_dim()));
    }
    if (std::abs(norm() - 1.0) > kNormTolerance) {
        throw InputError("state is not normalized (norm " + std::to_string(norm()) + ")");
    }
}

StateVector StateVector::normalized(RegisterLayout layout, std::vector<cplx> amplitudes) {
    const double n = std::sqrt(kernels::active().norm2(amplitudes.data(), amplitudes.size()));
    if (!(n > 0) || !std::isfinite(n)) {
        throw InputError("cannot normalize a zero or non-finite vector");
    }
    for (auto &a : amplitudes) {
        a /= n;
    }
    return StateVector(std::move(layout), std::move(amplitudes));
}

StateVector StateVector::basis(RegisterLayout layout, std::span<const std::size_t> digits) {
    std::vector<cplx> amps(layout.total_dim());
    amps[layout.encode(digits)] = 1.0;
    return StateVector(std::move(layout), std::move(amps));
}

StateVector StateVector::uniform(RegisterLayout layout) {
    const std::size_t d = layout.total_dim();
    std::vector<cplx> amps(d, cplx(1.0 / std::sqrt(static_cast<double>(d)), 0.0));
    return StateVector(std::move(layout), std::move(amps));
}

double StateVector::norm() const {
    return std::sqrt(kernels::active().norm2(amps_.data(), amps_.size()));
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    std::vector<cplx> amps(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); i++) {
        if (a[i] == cplx{}) {
            continue;
        }
        kernels::active().axpy(a[i], b.amplitudes().data(), amps.data() + i * b.dim(), b.dim());
    }
    return StateVector::normalized(a.layout().concat(b.layout()), std::move(amps));
}

StateVector tensor_power(const StateVector &a, std::size_t k) {
    if (k == 0) {
        throw InputError("tensor power needs at least one copy");
    }
    StateVector r = a;
    for (std::size_t i = 1; i < k; i++) {
        r = tensor(r, a);
    }
    return r;
}

Matrix qft_matrix(std::size_t k) {
    if (k == 0) {
        throw InputError("Fourier transform dimension must be positive");
    }
    Matrix f(k, k);
    const double scale = 1.0 / std::sqrt(static_cast<double>(k));
    for (std::size_t t = 0; t < k; t++) {
        for (std::size_t s = 0; s < k; s++) {
            // Reduce the exponent mod K before taking the angle.
            const std::size_t e = (s * t) % k;
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(k);
            f(t, s) = std::polar(scale, angle);
        }
    }
    return f;
}

void apply_matrix_to_register(const RegisterLayout &layout, std::size_t reg, const Matrix &m,
                              std::span<const cplx> in, std::span<cplx> out) {
    if (reg >= layout.size()) {
        throw InputError("register index out of range");
    }
    const std::size_t d = layout[reg].dim;
    if (m.rows() != d || m.cols() != d) {
        throw InputError("operator dimension " + std::to_string(m.rows()) + " does not match register dimension " +
                         std::to_string(d));
    }
    if (in.size() != layout.total_dim() || out.size() != layout.total_dim()) {
        throw InputError("amplitude buffer does not match layout");
    }
    const auto &k = kernels::active();
    const std::size_t s = layout.stride(reg);
    const std::size_t block = d * s;
    const std::size_t outer = layout.total_dim() / block;
    std::fill(out.begin(), out.end(), cplx{});
    for (std::size_t o = 0; o < outer; o++) {
        const cplx *src = in.data() + o * block;
        cplx *dst = out.data() + o * block;
        if (s == 1) {
            for (std::size_t t = 0; t < d; t++) {
                dst[t] = k.dotu(m.row(t), src, d);
            }
            continue;
        }
        for (std::size_t t = 0; t < d; t++) {
            for (std::size_t c = 0; c < d; c++) {
                const cplx coef = m(t, c);
                if (coef != cplx{}) {
                    k.axpy(coef, src + c * s, dst + t * s, s);
                }
            }
        }
    }
}

StateVector apply_unitary_to_register(const StateVector &state, std::size_t reg, const Matrix &u) {
    std::vector<cplx> out(state.dim());
    apply_matrix_to_register(state.layout(), reg, u, state.amplitudes(), out);
    const double n = std::sqrt(kernels::active().norm2(out.data(), out.size()));
    if (std::abs(n - 1.0) > StateVector::kNormTolerance) {
        throw InvariantError("operator did not preserve the norm; is it unitary?");
    }
    return StateVector(state.layout(), std::move(out));
}

std::vector<cplx> permute_registers(const RegisterLayout &layout, std::span<const cplx> amps,
                                    std::span<const std::size_t> order) {
    if (order.size() != layout.size()) {
        throw InputError("permutation must list every register once");
    }
    std::vector<bool> seen(layout.size(), false);
    for (std::size_t r : order) {
        if (r >= layout.size() || seen[r]) {
            throw InputError("invalid register permutation");
        }
        seen[r] = true;
    }
    const RegisterLayout target = layout.select(order);
    std::vector<std::size_t> target_stride_of_source(layout.size());
    for (std::size_t p = 0; p < order.size(); p++) {
        target_stride_of_source[order[p]] = target.stride(p);
    }
    std::vector<cplx> out(amps.size());
    for (std::size_t i = 0; i < amps.size(); i++) {
        std::size_t j = 0;
        for (std::size_t r = 0; r < layout.size(); r++) {
            j += layout.digit(i, r) * target_stride_of_source[r];
        }
        out[j] = amps[i];
    }
    return out;
}

double OutcomeDistribution::total() const {
    double s = 0;
    for (const auto &[o, p] : probabilities) {
        s += p;
    }
    return s;
}

double OutcomeDistribution::at(const Outcome &o) const {
    auto it = probabilities.find(o);
    return it == probabilities.end() ? 0.0 : it->second;
}

namespace {

struct KeyMap {
    RegisterLayout sub;
    std::vector<std::size_t> keys;
};

// For each basis index, the mixed-radix key of the measured registers' values.
KeyMap outcome_keys(const RegisterLayout &layout, std::span<const std::size_t> regs) {
    std::vector<bool> seen(layout.size(), false);
    for (std::size_t r : regs) {
        if (r >= layout.size()) {
            throw InputError("measured register out of range");
        }
        if (seen[r]) {
            throw InputError("measured registers must be distinct");
        }
        seen[r] = true;
    }
    KeyMap km{layout.select(regs), {}};
    km.keys.resize(layout.total_dim());
    for (std::size_t i = 0; i < layout.total_dim(); i++) {
        std::size_t key = 0;
        for (std::size_t p = 0; p < regs.size(); p++) {
            key += layout.digit(i, regs[p]) * km.sub.stride(p);
        }
        km.keys[i] = key;
    }
    return km;
}

std::vector<double> key_masses(const StateVector &state, const KeyMap &km) {
    std::vector<double> probs(state.dim());
    kernels::active().abs2(state.amplitudes().data(), probs.data(), probs.size());
    std::vector<double> mass(km.sub.total_dim(), 0.0);
    for (std::size_t i = 0; i < probs.size(); i++) {
        mass[km.keys[i]] += probs[i];
    }
    return mass;
}

}  // namespace

OutcomeDistribution measurement_distribution(const StateVector &state, std::span<const std::size_t> regs) {
    const KeyMap km = outcome_keys(state.layout(), regs);
    const auto mass = key_masses(state, km);
    OutcomeDistribution d;
    d.registers.assign(regs.begin(), regs.end());
    for (std::size_t key = 0; key < mass.size(); key++) {
        if (mass[key] >= kOutcomeCutoff) {
            d.probabilities.emplace(km.sub.decode(key), mass[key]);
        }
    }
    return d;
}

Measurement measure_registers(const StateVector &state, std::span<const std::size_t> regs) {
    const KeyMap km = outcome_keys(state.layout(), regs);
    const auto mass = key_masses(state, km);
    Measurement m;
    m.distribution.registers.assign(regs.begin(), regs.end());
    for (std::size_t key = 0; key < mass.size(); key++) {
        if (mass[key] < kOutcomeCutoff) {
            continue;
        }
        std::vector<cplx> post(state.dim());
        const double scale = 1.0 / std::sqrt(mass[key]);
        for (std::size_t i = 0; i < state.dim(); i++) {
            if (km.keys[i] == key) {
                post[i] = state[i] * scale;
            }
        }
        Outcome o = km.sub.decode(key);
        m.distribution.probabilities.emplace(o, mass[key]);
        m.post_states.emplace(std::move(o), StateVector::normalized(state.layout(), std::move(post)));
    }
    return m;
}

ExactOutcomeDistribution measure_flat_exact(const StateVector &state, std::span<const std::size_t> regs) {
    const KeyMap km = outcome_keys(state.layout(), regs);
    std::vector<double> probs(state.dim());
    kernels::active().abs2(state.amplitudes().data(), probs.data(), probs.size());
    double level = 0;
    std::size_t support = 0;
    std::vector<std::size_t> counts(km.sub.total_dim(), 0);
    for (std::size_t i = 0; i < probs.size(); i++) {
        if (probs[i] < kOutcomeCutoff) {
            continue;
        }
        if (support == 0) {
            level = probs[i];
        } else if (std::abs(probs[i] - level) > 1e-12 * std::max(1.0, level)) {
            throw InputError("exact measurement requires a flat-amplitude state");
        }
        support++;
        counts[km.keys[i]]++;
    }
    ExactOutcomeDistribution d;
    d.registers.assign(regs.begin(), regs.end());
    for (std::size_t key = 0; key < counts.size(); key++) {
        if (counts[key] != 0) {
            Rational p(static_cast<unsigned long>(counts[key]), static_cast<unsigned long>(support));
            p.canonicalize();
            d.probabilities.emplace(km.sub.decode(key), p);
        }
    }
    return d;
}

LocalOperator LocalOperator::identity(RegisterLayout layout) {
    LocalOperator op(std::move(layout));
    op.add_term(1.0, {});
    return op;
}

void LocalOperator::add_term(cplx coeff, std::vector<std::shared_ptr<const Matrix>> factors) {
    factors.resize(layout_.size());
    for (std::size_t r = 0; r < factors.size(); r++) {
        if (factors[r] && (factors[r]->rows() != layout_[r].dim || factors[r]->cols() != layout_[r].dim)) {
            throw InputError("local factor dimension does not match its register");
        }
    }
    terms_.push_back({coeff, std::move(factors)});
}

void LocalOperator::apply(const RegisterLayout &full, std::size_t offset, std::span<const cplx> in,
                          std::span<cplx> out) const {
    if (offset + layout_.size() > full.size()) {
        throw InputError("local operator does not fit the layout");
    }
    for (std::size_t r = 0; r < layout_.size(); r++) {
        if (full[offset + r].dim != layout_[r].dim) {
            throw InputError("local operator register dimension mismatch");
        }
    }
    const auto &k = kernels::active();
    std::fill(out.begin(), out.end(), cplx{});
    std::vector<cplx> cur(in.size());
    std::vector<cplx> nxt(in.size());
    for (const Term &t : terms_) {
        std::copy(in.begin(), in.end(), cur.begin());
        for (std::size_t r = 0; r < t.factors.size(); r++) {
            if (t.factors[r]) {
                apply_matrix_to_register(full, offset + r, *t.factors[r], cur, nxt);
                cur.swap(nxt);
            }
        }
        k.axpy(t.coeff, cur.data(), out.data(), out.size());
    }
}

Matrix LocalOperator::dense() const {
    const std::size_t d = layout_.total_dim();
    Matrix m(d, d);
    for (const Term &t : terms_) {
        Matrix prod = Matrix::identity(1);
        for (std::size_t r = 0; r < layout_.size(); r++) {
            prod = prod.kron(t.factors[r] ? *t.factors[r] : Matrix::identity(layout_[r].dim));
        }
        m = m + prod.scaled(t.coeff);
    }
    return m;
}

Matrix PovmSide::element_dense(std::size_t outcome) const {
    if (outcome >= num_outcomes()) {
        throw InputError("POVM outcome out of range");
    }
    if (standard_basis) {
        Matrix m(layout.total_dim(), layout.total_dim());
        m(outcome, outcome) = 1.0;
        return m;
    }
    return elements[outcome].dense();
}

RegisterLayout ProductAcceptOperator::layout() const {
    if (terms.empty()) {
        throw InputError("acceptance operator has no terms");
    }
    return terms.front().alice.layout.concat(terms.front().bob.layout);
}

namespace {

void check_side(const PovmSide &side, std::size_t max_dense_dim) {
    if (!side.standard_basis) {
        if (side.elements.empty()) {
            throw InputError("POVM side has no elements");
        }
        for (const auto &e : side.elements) {
            if (!(e.layout() == side.layout)) {
                throw InputError("POVM element layout differs from its side");
            }
        }
    }
    const std::size_t d = side.layout.total_dim();
    if (side.standard_basis || d > max_dense_dim) {
        return;
    }
    Matrix sum(d, d);
    for (std::size_t o = 0; o < side.num_outcomes(); o++) {
        Matrix m = side.element_dense(o);
        if (m.max_abs_diff(m.adjoint()) > 1e-9) {
            throw InputError("POVM element is not Hermitian");
        }
        Eigen::MatrixXcd em(d, d);
        for (std::size_t i = 0; i < d; i++) {
            for (std::size_t j = 0; j < d; j++) {
                em(i, j) = m(i, j);
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(em, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-9 || es.eigenvalues().maxCoeff() > 1 + 1e-9) {
            throw InputError("POVM element has eigenvalues outside [0, 1]");
        }
        sum = sum + m;
    }
    if (sum.max_abs_diff(Matrix::identity(d)) > 1e-9) {
        throw InputError("POVM elements do not sum to the identity");
    }
}

// Zeroes every amplitude whose registers [offset, offset+size) do not encode `outcome`.
void project_standard(const RegisterLayout &full, std::size_t offset, const RegisterLayout &side,
                      std::size_t outcome, std::span<const cplx> in, std::span<cplx> out) {
    const std::size_t inner = full.stride(offset + side.size() - 1);
    const std::size_t block = side.total_dim() * inner;
    for (std::size_t i = 0; i < in.size(); i++) {
        out[i] = ((i % block) / inner == outcome) ? in[i] : cplx{};
    }
}

void apply_element(const RegisterLayout &full, std::size_t offset, const PovmSide &side, std::size_t outcome,
                   std::span<const cplx> in, std::span<cplx> out) {
    if (side.standard_basis) {
        project_standard(full, offset, side.layout, outcome, in, out);
    } else {
        side.elements[outcome].apply(full, offset, in, out);
    }
}

}  // namespace

void ProductAcceptOperator::validate(std::size_t max_dense_dim) const {
    const RegisterLayout joint = layout();
    for (const auto &t : terms) {
        if (!(t.alice.layout.concat(t.bob.layout) == joint)) {
            throw InputError("acceptance operator terms act on different layouts");
        }
        if (!t.accept) {
            throw InputError("acceptance operator term has no combining function");
        }
        if (t.weight < 0) {
            throw InputError("negative term weight");
        }
        check_side(t.alice, max_dense_dim);
        check_side(t.bob, max_dense_dim);
    }
}

double expectation(const StateVector &state, const ProductAcceptOperator &op) {
    const RegisterLayout joint = op.layout();
    if (!(state.layout().registers().size() == joint.size()) || state.dim() != joint.total_dim()) {
        throw InputError("operator layout does not match state layout");
    }
    for (std::size_t r = 0; r < joint.size(); r++) {
        if (state.layout()[r].dim != joint[r].dim) {
            throw InputError("operator layout does not match state layout");
        }
    }
    const auto &k = kernels::active();
    double total = 0;
    std::vector<double> probs;
    std::vector<cplx> phi(state.dim());
    std::vector<cplx> chi(state.dim());
    for (const auto &t : op.terms) {
        const std::size_t na = t.alice.num_outcomes();
        const std::size_t nb = t.bob.num_outcomes();
        const std::size_t bob_offset = t.alice.layout.size();
        double term = 0;
        if (t.alice.standard_basis && t.bob.standard_basis) {
            if (probs.empty()) {
                probs.resize(state.dim());
                k.abs2(state.amplitudes().data(), probs.data(), probs.size());
            }
            for (std::size_t a = 0; a < na; a++) {
                for (std::size_t b = 0; b < nb; b++) {
                    const double p = probs[a * nb + b];
                    if (p != 0 && t.accept(a, b)) {
                        term += p;
                    }
                }
            }
        } else {
            for (std::size_t a = 0; a < na; a++) {
                bool any = false;
                for (std::size_t b = 0; b < nb && !any; b++) {
                    any = t.accept(a, b);
                }
                if (!any) {
                    continue;
                }
                apply_element(joint, 0, t.alice, a, state.amplitudes(), phi);
                for (std::size_t b = 0; b < nb; b++) {
                    if (!t.accept(a, b)) {
                        continue;
                    }
                    apply_element(joint, bob_offset, t.bob, b, phi, chi);
                    term += k.dotc(state.amplitudes().data(), chi.data(), chi.size()).real();
                }
            }
        }
        total += t.weight * term;
    }
    if (total < -1e-9 || total > 1 + 1e-9) {
        throw InvariantError("expectation " + std::to_string(total) + " outside [0, 1]");
    }
    return std::clamp(total, 0.0, 1.0);
}

Matrix to_dense(const ProductAcceptOperator &op) {
    const RegisterLayout joint = op.layout();
    const std::size_t d = joint.total_dim();
    Matrix m(d, d);
    for (const auto &t : op.terms) {
        const std::size_t na = t.alice.num_outcomes();
        const std::size_t nb = t.bob.num_outcomes();
        if (t.alice.standard_basis && t.bob.standard_basis) {
            for (std::size_t a = 0; a < na; a++) {
                for (std::size_t b = 0; b < nb; b++) {
                    if (t.accept(a, b)) {
                        m(a * nb + b, a * nb + b) += t.weight;
                    }
                }
            }
            continue;
        }
        std::vector<Matrix> bob_dense;
        for (std::size_t b = 0; b < nb; b++) {
            bob_dense.push_back(t.bob.element_dense(b));
        }
        for (std::size_t a = 0; a < na; a++) {
            Matrix ad;
            bool have = false;
            for (std::size_t b = 0; b < nb; b++) {
                if (!t.accept(a, b)) {
                    continue;
                }
                if (!have) {
                    ad = t.alice.element_dense(a);
                    have = true;
                }
                m = m + ad.kron(bob_dense[b]).scaled(t.weight);
            }
        }
    }
    return m;
}

}  // namespace qfree
