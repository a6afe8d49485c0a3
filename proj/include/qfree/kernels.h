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

#ifndef QFREE_KERNELS_H
#define QFREE_KERNELS_H

#include <complex>
#include <cstddef>

namespace qfree::kernels {

using cplx = std::complex<double>;

enum class Isa : int {
    kScalar = 0,
    kAvx2 = 1,
};

/// Inner loops of the state-vector core. Every entry has a scalar reference
/// implementation; SIMD variants must agree with it to rounding.
struct Table {
    Isa isa;
    const char *name;
    /// y[i] += a * x[i]
    void (*axpy)(cplx a, const cplx *x, cplx *y, std::size_t n);
    /// sum_i a[i] * b[i]
    cplx (*dotu)(const cplx *a, const cplx *b, std::size_t n);
    /// sum_i conj(a[i]) * b[i]
    cplx (*dotc)(const cplx *a, const cplx *b, std::size_t n);
    /// out[i] = |x[i]|^2
    void (*abs2)(const cplx *x, double *out, std::size_t n);
    /// sum_i |x[i]|^2
    double (*norm2)(const cplx *x, std::size_t n);
};

const Table &scalar_table();

/// nullptr when the AVX2 translation unit was not compiled in.
const Table *avx2_table();

bool cpu_supports(Isa isa);

/// The table used by the library. Chosen on first use: QFREE_ISA=scalar|avx2
/// if set and supported, otherwise the best ISA the CPU reports.
const Table &active();

/// Overrides the active table. Throws InputError if the ISA is unavailable.
void force(Isa isa);

}  // namespace qfree::kernels

#endif
