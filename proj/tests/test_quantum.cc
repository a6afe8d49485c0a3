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

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "qfree/common.h"
#include "qfree/kernels.h"
#include "test_support.h"

using namespace qfree;
using qfree::testing::random_vector;

namespace {

/// Dense reference for one register: builds I (x) M (x) I explicitly.
std::vector<cplx> reference_apply(const RegisterLayout &layout, std::size_t reg, const Matrix &m,
                                  const std::vector<cplx> &in) {
    std::vector<cplx> out(in.size());
    for (std::size_t i = 0; i < in.size(); i++) {
        const auto di = layout.decode(i);
        for (std::size_t j = 0; j < in.size(); j++) {
            const auto dj = layout.decode(j);
            bool same = true;
            for (std::size_t r = 0; r < layout.size(); r++) {
                if (r != reg && di[r] != dj[r]) {
                    same = false;
                }
            }
            if (same) {
                out[i] += m(di[reg], dj[reg]) * in[j];
            }
        }
    }
    return out;
}

Matrix random_matrix(std::mt19937_64 &rng, std::size_t n) {
    Matrix m(n, n);
    auto v = random_vector(rng, n * n);
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t c = 0; c < n; c++) {
            m(r, c) = v[r * n + c];
        }
    }
    return m;
}

}  // namespace

TEST(quantum, fourier_is_unitary_and_squares_to_negation) {
    for (std::size_t k = 1; k <= 64; k++) {
        const Matrix f = qft_matrix(k);
        EXPECT_LT((f * f.adjoint()).max_abs_diff(Matrix::identity(k)), 1e-12) << k;
        const Matrix f2 = f * f;
        for (std::size_t s = 0; s < k; s++) {
            for (std::size_t t = 0; t < k; t++) {
                const double expect = (t == (k - s) % k) ? 1.0 : 0.0;
                EXPECT_LT(std::abs(f2(t, s) - expect), 1e-12);
            }
        }
    }
}

TEST(quantum, fourier_entries) {
    const Matrix f = qft_matrix(4);
    EXPECT_LT(std::abs(f(1, 1) - cplx(0, 0.5)), 1e-15);
    EXPECT_LT(std::abs(f(3, 2) - cplx(-0.5, 0)), 1e-15);
    EXPECT_LT(std::abs(qft_matrix(1)(0, 0) - cplx(1, 0)), 1e-15);
}

TEST(quantum, layout_encode_decode) {
    const RegisterLayout l = RegisterLayout::plain({3, 2, 5});
    EXPECT_EQ(l.total_dim(), 30u);
    for (std::size_t i = 0; i < 30; i++) {
        const auto d = l.decode(i);
        EXPECT_EQ(l.encode(d), i);
        EXPECT_EQ(l.digit(i, 1), d[1]);
    }
    EXPECT_EQ(l.decode(7), (std::vector<std::size_t>{0, 1, 2}));
    const RegisterLayout p = RegisterLayout::protocol(3, 4, 2);
    EXPECT_EQ(p.size(), 4u);
    EXPECT_EQ(p[0].dim, 3u);
    EXPECT_EQ(p[1].dim, 4u);
}

TEST(quantum, state_vector_checks_norm) {
    const RegisterLayout l = RegisterLayout::plain({2});
    EXPECT_THROW(StateVector(l, {1.0, 1.0}), InputError);
    EXPECT_THROW(StateVector(l, {1.0}), InputError);
    EXPECT_NO_THROW(StateVector(l, {1.0, 1e-11}));
    EXPECT_THROW(StateVector::normalized(l, {0.0, 0.0}), InputError);
    const StateVector s = StateVector::normalized(l, {3.0, 4.0});
    EXPECT_NEAR(std::abs(s[1]), 0.8, 1e-15);
}

TEST(quantum, register_application_matches_dense_reference) {
    std::mt19937_64 rng(3);
    for (const auto isa : {kernels::Isa::kScalar, kernels::Isa::kAvx2}) {
        if (!kernels::cpu_supports(isa) || (isa == kernels::Isa::kAvx2 && kernels::avx2_table() == nullptr)) {
            continue;
        }
        kernels::force(isa);
        const RegisterLayout l = RegisterLayout::plain({3, 2, 4});
        const auto in = random_vector(rng, l.total_dim());
        for (std::size_t reg = 0; reg < 3; reg++) {
            const Matrix m = random_matrix(rng, l[reg].dim);
            std::vector<cplx> out(in.size());
            apply_matrix_to_register(l, reg, m, in, out);
            const auto ref = reference_apply(l, reg, m, in);
            for (std::size_t i = 0; i < in.size(); i++) {
                EXPECT_LT(std::abs(out[i] - ref[i]), 1e-13);
            }
        }
    }
}

TEST(quantum, unitary_application_and_drift_detection) {
    std::mt19937_64 rng(4);
    const RegisterLayout l = RegisterLayout::plain({2, 3});
    const StateVector s(l, random_vector(rng, 6));
    const StateVector t = apply_unitary_to_register(s, 1, qft_matrix(3));
    EXPECT_NEAR(t.norm(), 1.0, 1e-12);
    Matrix bad = Matrix::identity(3).scaled(1.01);
    EXPECT_THROW(apply_unitary_to_register(s, 1, bad), InvariantError);
    EXPECT_THROW(apply_unitary_to_register(s, 1, qft_matrix(2)), InputError);
}

TEST(quantum, tensor_power_and_permutation) {
    const RegisterLayout l = RegisterLayout::plain({2});
    const StateVector a(l, {0.6, 0.8});
    const StateVector p = tensor_power(a, 3);
    EXPECT_EQ(p.dim(), 8u);
    EXPECT_NEAR(p[5].real(), 0.8 * 0.6 * 0.8, 1e-15);
    const RegisterLayout l2 = RegisterLayout::plain({2, 3});
    std::vector<cplx> amps(6);
    for (std::size_t i = 0; i < 6; i++) {
        amps[i] = static_cast<double>(i);
    }
    const std::vector<std::size_t> order{1, 0};
    const auto q = permute_registers(l2, amps, order);
    // Result register 0 is the old register 1 (dim 3).
    for (std::size_t x = 0; x < 2; x++) {
        for (std::size_t y = 0; y < 3; y++) {
            EXPECT_EQ(q[y * 2 + x], amps[x * 3 + y]);
        }
    }
}

TEST(quantum, measurement_distribution_sums_to_one_and_marginalizes) {
    std::mt19937_64 rng(8);
    const RegisterLayout l = RegisterLayout::plain({2, 3, 2});
    const StateVector s(l, random_vector(rng, 12));
    const std::vector<std::size_t> regs{0, 2};
    const auto d = measurement_distribution(s, regs);
    EXPECT_NEAR(d.total(), 1.0, 1e-12);
    for (std::size_t a = 0; a < 2; a++) {
        for (std::size_t c = 0; c < 2; c++) {
            double ref = 0;
            for (std::size_t b = 0; b < 3; b++) {
                ref += std::norm(s[(a * 3 + b) * 2 + c]);
            }
            EXPECT_NEAR(d.at({a, c}), ref, 1e-14);
        }
    }
    const auto m = measure_registers(s, regs);
    for (const auto &[o, post] : m.post_states) {
        EXPECT_NEAR(post.norm(), 1.0, 1e-12);
    }
}

TEST(quantum, flat_states_measure_exactly) {
    const RegisterLayout l = RegisterLayout::plain({3, 2});
    const StateVector u = StateVector::uniform(l);
    const std::vector<std::size_t> regs{0};
    const auto d = measure_flat_exact(u, regs);
    for (std::size_t a = 0; a < 3; a++) {
        EXPECT_EQ(d.probabilities.at({a}), Rational(1, 3));
    }
    const StateVector nf(l, {0.6, 0.8, 0, 0, 0, 0});
    EXPECT_THROW(measure_flat_exact(nf, regs), InputError);
}

TEST(quantum, local_operator_dense_matches_apply) {
    std::mt19937_64 rng(9);
    const RegisterLayout l = RegisterLayout::plain({2, 3});
    LocalOperator op(l);
    auto m0 = std::make_shared<const Matrix>(random_matrix(rng, 2));
    auto m1 = std::make_shared<const Matrix>(random_matrix(rng, 3));
    op.add_term({0.5, 0}, {m0, nullptr});
    op.add_term({0, 1}, {m0, m1});
    const Matrix d = op.dense();
    const auto in = random_vector(rng, 6);
    std::vector<cplx> out(6);
    op.apply(l, 0, in, out);
    for (std::size_t r = 0; r < 6; r++) {
        cplx acc = 0;
        for (std::size_t c = 0; c < 6; c++) {
            acc += d(r, c) * in[c];
        }
        EXPECT_LT(std::abs(acc - out[r]), 1e-13);
    }
    const Matrix ref = m0->kron(Matrix::identity(3)).scaled(0.5) + m0->kron(*m1).scaled(cplx(0, 1));
    EXPECT_LT(d.max_abs_diff(ref), 1e-14);
}

TEST(quantum, expectation_matches_dense_operator) {
    std::mt19937_64 rng(10);
    const RegisterLayout la = RegisterLayout::plain({2});
    const RegisterLayout lb = RegisterLayout::plain({3});
    ProductAcceptOperator op;
    ProductAcceptOperator::Term t;
    t.weight = 1.0;
    t.alice.layout = la;
    t.alice.standard_basis = true;
    t.bob.layout = lb;
    t.bob.standard_basis = true;
    t.accept = [](std::size_t a, std::size_t b) { return (a + b) % 2 == 0; };
    op.terms.push_back(t);
    op.validate();
    const StateVector a(la, random_vector(rng, 2));
    const StateVector b(lb, random_vector(rng, 3));
    const StateVector ab = tensor(a, b);
    const Matrix m = to_dense(op);
    cplx ref = 0;
    for (std::size_t r = 0; r < 6; r++) {
        for (std::size_t c = 0; c < 6; c++) {
            ref += std::conj(ab[r]) * m(r, c) * ab[c];
        }
    }
    EXPECT_NEAR(expectation(ab, op), ref.real(), 1e-13);
}
