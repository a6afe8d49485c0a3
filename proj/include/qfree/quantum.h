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

#ifndef QFREE_QUANTUM_H
#define QFREE_QUANTUM_H

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "qfree/rational.h"

namespace qfree {

using cplx = std::complex<double>;

enum class RegisterRole { kQuestion, kAnswer };

struct Register {
    RegisterRole role = RegisterRole::kQuestion;
    std::size_t dim = 1;
    std::size_t copy = 0;
    bool operator==(const Register &) const = default;
};

/// Ordered tensor factors. Basis index is the mixed-radix encoding of the
/// per-register values with the first register most significant.
class RegisterLayout {
   public:
    RegisterLayout() = default;
    explicit RegisterLayout(std::vector<Register> registers);

    /// Q_1 A_1 Q_2 A_2 ... Q_k A_k.
    static RegisterLayout protocol(std::size_t question_dim, std::size_t answer_dim, std::size_t copies);
    /// Question-role registers with the given dimensions, copy index = position.
    static RegisterLayout plain(const std::vector<std::size_t> &dims);

    std::size_t size() const {
        return regs_.size();
    }
    const Register &operator[](std::size_t i) const {
        return regs_[i];
    }
    const std::vector<Register> &registers() const {
        return regs_;
    }
    std::size_t total_dim() const {
        return total_;
    }
    /// Product of the dimensions of the registers after `i`.
    std::size_t stride(std::size_t i) const {
        return strides_[i];
    }
    std::size_t digit(std::size_t index, std::size_t reg) const {
        return (index / strides_[reg]) % regs_[reg].dim;
    }
    std::vector<std::size_t> decode(std::size_t index) const;
    std::size_t encode(std::span<const std::size_t> digits) const;

    RegisterLayout concat(const RegisterLayout &other) const;
    RegisterLayout select(std::span<const std::size_t> regs) const;

    bool operator==(const RegisterLayout &other) const {
        return regs_ == other.regs_;
    }

   private:
    std::vector<Register> regs_;
    std::vector<std::size_t> strides_;
    std::size_t total_ = 1;
};

/// Dense row-major complex matrix.
class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    }
    static Matrix identity(std::size_t n);
    /// |v><v| for a (not necessarily normalized) vector v.
    static Matrix outer(std::span<const cplx> v);

    std::size_t rows() const {
        return rows_;
    }
    std::size_t cols() const {
        return cols_;
    }
    cplx &operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    const cplx &operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }
    const cplx *row(std::size_t r) const {
        return data_.data() + r * cols_;
    }
    std::span<const cplx> data() const {
        return data_;
    }

    Matrix operator*(const Matrix &o) const;
    Matrix operator+(const Matrix &o) const;
    Matrix operator-(const Matrix &o) const;
    Matrix scaled(cplx s) const;
    Matrix adjoint() const;
    Matrix kron(const Matrix &o) const;
    /// max_ij |a_ij - b_ij|
    double max_abs_diff(const Matrix &o) const;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Unit-norm amplitude vector over a register layout.
class StateVector {
   public:
    static constexpr double kNormTolerance = 1e-10;

    StateVector() = default;
    /// Throws InputError on a size mismatch or a norm off by more than kNormTolerance.
    StateVector(RegisterLayout layout, std::vector<cplx> amplitudes);
    /// Rescales to unit norm; throws InputError on the zero vector.
    static StateVector normalized(RegisterLayout layout, std::vector<cplx> amplitudes);
    static StateVector basis(RegisterLayout layout, std::span<const std::size_t> digits);
    /// Uniform superposition over every basis state (|0bar> on each register).
    static StateVector uniform(RegisterLayout layout);

    const RegisterLayout &layout() const {
        return layout_;
    }
    std::span<const cplx> amplitudes() const {
        return amps_;
    }
    const cplx &operator[](std::size_t i) const {
        return amps_[i];
    }
    std::size_t dim() const {
        return amps_.size();
    }
    double norm() const;

   private:
    RegisterLayout layout_;
    std::vector<cplx> amps_;
};

StateVector tensor(const StateVector &a, const StateVector &b);
StateVector tensor_power(const StateVector &a, std::size_t k);

/// Entry (t, s) = omega_K^{s t} / sqrt(K), omega_K = exp(2 pi i / K).
Matrix qft_matrix(std::size_t k);

/// out = (I x M x I) in, M acting on register `reg`. No norm requirement.
void apply_matrix_to_register(const RegisterLayout &layout, std::size_t reg, const Matrix &m,
                              std::span<const cplx> in, std::span<cplx> out);

/// Unitary on one tensor factor. Throws InputError on a dimension mismatch and
/// InvariantError if the norm drifts by more than 1e-10 (U not unitary).
StateVector apply_unitary_to_register(const StateVector &state, std::size_t reg, const Matrix &u);

/// Reorders tensor factors: register i of the result is register order[i] of the input.
std::vector<cplx> permute_registers(const RegisterLayout &layout, std::span<const cplx> amps,
                                    std::span<const std::size_t> order);

using Outcome = std::vector<std::size_t>;

struct OutcomeDistribution {
    std::vector<std::size_t> registers;
    std::map<Outcome, double> probabilities;
    double total() const;
    double at(const Outcome &o) const;
};

struct ExactOutcomeDistribution {
    std::vector<std::size_t> registers;
    std::map<Outcome, Rational> probabilities;
};

struct Measurement {
    OutcomeDistribution distribution;
    std::map<Outcome, StateVector> post_states;
};

inline constexpr double kOutcomeCutoff = 1e-14;

/// Born-rule distribution of a standard-basis measurement of `regs`;
/// outcomes with probability below kOutcomeCutoff are omitted.
OutcomeDistribution measurement_distribution(const StateVector &state, std::span<const std::size_t> regs);

/// Same distribution plus the renormalized post-measurement state per outcome.
Measurement measure_registers(const StateVector &state, std::span<const std::size_t> regs);

/// Exact distribution for a flat state (all nonzero amplitudes of equal modulus).
/// Throws InputError if the state is not flat.
ExactOutcomeDistribution measure_flat_exact(const StateVector &state, std::span<const std::size_t> regs);

/// Linear combination of tensor products of single-register operators on a
/// layout. A null factor is the identity.
class LocalOperator {
   public:
    struct Term {
        cplx coeff{1.0, 0.0};
        std::vector<std::shared_ptr<const Matrix>> factors;
    };

    LocalOperator() = default;
    explicit LocalOperator(RegisterLayout layout) : layout_(std::move(layout)) {
    }
    static LocalOperator identity(RegisterLayout layout);

    void add_term(cplx coeff, std::vector<std::shared_ptr<const Matrix>> factors);
    const RegisterLayout &layout() const {
        return layout_;
    }
    const std::vector<Term> &terms() const {
        return terms_;
    }

    /// out = Op in, where this operator acts on registers [offset, offset + size)
    /// of `full`.
    void apply(const RegisterLayout &full, std::size_t offset, std::span<const cplx> in, std::span<cplx> out) const;
    Matrix dense() const;

   private:
    RegisterLayout layout_;
    std::vector<Term> terms_;
};

/// One party's POVM in a Bell measurement: either the standard basis of its
/// layout, or an explicit list of elements.
struct PovmSide {
    RegisterLayout layout;
    bool standard_basis = false;
    std::vector<LocalOperator> elements;

    std::size_t num_outcomes() const {
        return standard_basis ? layout.total_dim() : elements.size();
    }
    Matrix element_dense(std::size_t outcome) const;
};

/// Weighted sum of Bell measurements: M = sum_t w_t sum_{f_t(a,b)=1} A^t_a (x) B^t_b.
/// Alice's registers come first in the joint layout.
struct ProductAcceptOperator {
    struct Term {
        double weight = 1.0;
        PovmSide alice;
        PovmSide bob;
        std::function<bool(std::size_t, std::size_t)> accept;
    };
    std::vector<Term> terms;

    RegisterLayout layout() const;
    /// Checks shapes, and for sides up to `max_dense_dim` that every element is
    /// Hermitian with spectrum in [0, 1] and that the elements sum to identity.
    void validate(std::size_t max_dense_dim = 256) const;
};

/// <psi| M |psi> clamped to [0, 1]; throws InvariantError if it leaves [-1e-9, 1 + 1e-9].
double expectation(const StateVector &state, const ProductAcceptOperator &op);

Matrix to_dense(const ProductAcceptOperator &op);

}  // namespace qfree

#endif
