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

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#endif

namespace qfree::kernels {

#if defined(__AVX2__) && defined(__FMA__)
namespace {

// One __m256d holds two interleaved complex doubles: [re0, im0, re1, im1].

inline __m256d load2(const cplx *p) {
    return _mm256_loadu_pd(reinterpret_cast<const double *>(p));
}

inline void store2(cplx *p, __m256d v) {
    _mm256_storeu_pd(reinterpret_cast<double *>(p), v);
}

inline __m256d swap_re_im(__m256d v) {
    return _mm256_permute_pd(v, 0b0101);
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// Sum of even lanes minus sum of odd lanes.
inline double hsum_even_minus_odd(__m256d v) {
    const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
    return hsum(_mm256_mul_pd(v, sign));
}

void axpy_avx2(cplx a, const cplx *x, cplx *y, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = load2(x + i);
        const __m256d cross = _mm256_mul_pd(ai, swap_re_im(xv));
        // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
        const __m256d prod = _mm256_fmaddsub_pd(ar, xv, cross);
        store2(y + i, _mm256_add_pd(load2(y + i), prod));
    }
    for (; i < n; i++) {
        y[i] += cplx(a.real() * x[i].real() - a.imag() * x[i].imag(),
                     a.real() * x[i].imag() + a.imag() * x[i].real());
    }
}

cplx dotu_avx2(const cplx *a, const cplx *b, std::size_t n) {
    __m256d direct = _mm256_setzero_pd();
    __m256d cross = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d av = load2(a + i);
        const __m256d bv = load2(b + i);
        direct = _mm256_fmadd_pd(av, bv, direct);
        cross = _mm256_fmadd_pd(av, swap_re_im(bv), cross);
    }
    double re = hsum_even_minus_odd(direct);
    double im = hsum(cross);
    for (; i < n; i++) {
        re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    }
    return {re, im};
}

cplx dotc_avx2(const cplx *a, const cplx *b, std::size_t n) {
    __m256d direct = _mm256_setzero_pd();
    __m256d cross = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d av = load2(a + i);
        const __m256d bv = load2(b + i);
        direct = _mm256_fmadd_pd(av, bv, direct);
        cross = _mm256_fmadd_pd(av, swap_re_im(bv), cross);
    }
    double re = hsum(direct);
    double im = hsum_even_minus_odd(cross);
    for (; i < n; i++) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

void abs2_avx2(const cplx *x, double *out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v0 = load2(x + i);
        const __m256d v1 = load2(x + i + 2);
        const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
        // h = [|x0|^2, |x2|^2, |x1|^2, |x3|^2]
        _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(h, 0b11011000));
    }
    for (; i < n; i++) {
        out[i] = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
}

double norm2_avx2(const cplx *x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v0 = load2(x + i);
        const __m256d v1 = load2(x + i + 2);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; i++) {
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return s;
}

}  // namespace

const Table *avx2_table() {
    static const Table t{Isa::kAvx2, "avx2", axpy_avx2, dotu_avx2, dotc_avx2, abs2_avx2, norm2_avx2};
    return &t;
}

#else

const Table *avx2_table() {
    return nullptr;
}

#endif

}  // namespace qfree::kernels
