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

#include "qfree/kernels.h"

#include <gtest/gtest.h>

#include <random>

using namespace qfree;
using namespace qfree::kernels;

namespace {

std::vector<cplx> make_data(std::mt19937_64 &rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<cplx> v(n);
    for (auto &x : v) {
        x = cplx(u(rng), u(rng));
    }
    return v;
}

std::vector<const Table *> tables() {
    std::vector<const Table *> t{&scalar_table()};
    if (avx2_table() != nullptr && cpu_supports(Isa::kAvx2)) {
        t.push_back(avx2_table());
    }
    return t;
}

}  // namespace

TEST(kernels, scalar_reference_values) {
    const Table &s = scalar_table();
    std::vector<cplx> x{{1, 2}, {3, -1}};
    std::vector<cplx> y{{0, 1}, {2, 2}};
    EXPECT_EQ(s.dotu(x.data(), y.data(), 2), cplx(1, 2) * cplx(0, 1) + cplx(3, -1) * cplx(2, 2));
    EXPECT_EQ(s.dotc(x.data(), y.data(), 2), std::conj(cplx(1, 2)) * cplx(0, 1) + std::conj(cplx(3, -1)) * cplx(2, 2));
    EXPECT_DOUBLE_EQ(s.norm2(x.data(), 2), 15.0);
    s.axpy(cplx(0, 1), x.data(), y.data(), 2);
    EXPECT_EQ(y[0], cplx(0, 1) + cplx(0, 1) * cplx(1, 2));
}

TEST(kernels, simd_matches_scalar) {
    std::mt19937_64 rng(7);
    const Table &ref = scalar_table();
    for (const Table *t : tables()) {
        for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 63u, 64u, 1000u, 4099u}) {
            const auto a = make_data(rng, n);
            const auto b = make_data(rng, n);
            const double scale = static_cast<double>(n) + 1;
            EXPECT_NEAR(std::abs(t->dotu(a.data(), b.data(), n) - ref.dotu(a.data(), b.data(), n)), 0,
                        1e-13 * scale)
                << t->name << " n=" << n;
            EXPECT_NEAR(std::abs(t->dotc(a.data(), b.data(), n) - ref.dotc(a.data(), b.data(), n)), 0,
                        1e-13 * scale);
            EXPECT_NEAR(t->norm2(a.data(), n), ref.norm2(a.data(), n), 1e-13 * scale);
            std::vector<double> o1(n), o2(n);
            t->abs2(a.data(), o1.data(), n);
            ref.abs2(a.data(), o2.data(), n);
            for (std::size_t i = 0; i < n; i++) {
                EXPECT_NEAR(o1[i], o2[i], 1e-15);
            }
            auto y1 = b;
            auto y2 = b;
            const cplx alpha(0.3, -1.7);
            t->axpy(alpha, a.data(), y1.data(), n);
            ref.axpy(alpha, a.data(), y2.data(), n);
            for (std::size_t i = 0; i < n; i++) {
                EXPECT_NEAR(std::abs(y1[i] - y2[i]), 0, 1e-15);
            }
        }
    }
}

TEST(kernels, force_and_restore) {
    const Isa before = active().isa;
    force(Isa::kScalar);
    EXPECT_EQ(active().isa, Isa::kScalar);
    if (cpu_supports(Isa::kAvx2) && avx2_table() != nullptr) {
        force(Isa::kAvx2);
        EXPECT_EQ(active().isa, Isa::kAvx2);
    }
    force(before);
}
