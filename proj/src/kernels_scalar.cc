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

namespace qfree::kernels {
namespace {

void axpy_scalar(cplx a, const cplx *x, cplx *y, std::size_t n) {
    const double ar = a.real();
    const double ai = a.imag();
    for (std::size_t i = 0; i < n; i++) {
        const double xr = x[i].real();
        const double xi = x[i].imag();
        y[i] += cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

cplx dotu_scalar(const cplx *a, const cplx *b, std::size_t n) {
    double re = 0;
    double im = 0;
    for (std::size_t i = 0; i < n; i++) {
        re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    }
    return {re, im};
}

cplx dotc_scalar(const cplx *a, const cplx *b, std::size_t n) {
    double re = 0;
    double im = 0;
    for (std::size_t i = 0; i < n; i++) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

void abs2_scalar(const cplx *x, double *out, std::size_t n) {
    for (std::size_t i = 0; i < n; i++) {
        out[i] = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
}

double norm2_scalar(const cplx *x, std::size_t n) {
    double s = 0;
    for (std::size_t i = 0; i < n; i++) {
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return s;
}

}  // namespace

const Table &scalar_table() {
    static const Table t{Isa::kScalar, "scalar", axpy_scalar, dotu_scalar, dotc_scalar, abs2_scalar, norm2_scalar};
    return t;
}

}  // namespace qfree::kernels
