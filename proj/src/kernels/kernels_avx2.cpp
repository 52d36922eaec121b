// Copyright 2026 The sedyn Authors
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

// Compiled with -mavx2 -mfma. Nothing in here may be called unless the
// dispatcher has confirmed CPU support.

#include <immintrin.h>

#include "sedyn/kernels/kernels.hpp"

namespace sedyn::kernels {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

void skew_rank2_avx2(const double* src, std::size_t lds, double* dst, std::size_t ldd, std::size_t n,
                     const double* u, const double* w) {
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t i = 0; i < n; i++) {
        const double ui = u[i];
        const double wi = w[i];
        const __m256d vu = _mm256_set1_pd(-ui);
        const __m256d vw = _mm256_set1_pd(wi);
        const double* s = src + i * lds;
        double* d = dst + i * ldd;
        std::size_t j = 0;
        for (; j < n4; j += 4) {
            __m256d acc = _mm256_loadu_pd(s + j);
            acc = _mm256_fmadd_pd(vu, _mm256_loadu_pd(w + j), acc);
            acc = _mm256_fmadd_pd(vw, _mm256_loadu_pd(u + j), acc);
            _mm256_storeu_pd(d + j, acc);
        }
        for (; j < n; j++) {
            d[j] = s[j] - ui * w[j] + wi * u[j];
        }
    }
}

void accumulate_pow24_avx2(const double* x, std::size_t n, double scale, double* s2, double* s4) {
    const std::size_t n4 = n & ~std::size_t{3};
    const __m256d vs = _mm256_set1_pd(scale);
    __m256d a2 = _mm256_setzero_pd();
    __m256d a4 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i < n4; i += 4) {
        __m256d v = _mm256_mul_pd(vs, _mm256_loadu_pd(x + i));
        __m256d v2 = _mm256_mul_pd(v, v);
        a2 = _mm256_add_pd(a2, v2);
        a4 = _mm256_fmadd_pd(v2, v2, a4);
    }
    double r2 = hsum(a2);
    double r4 = hsum(a4);
    for (; i < n; i++) {
        double v = scale * x[i];
        double v2 = v * v;
        r2 += v2;
        r4 += v2 * v2;
    }
    *s2 += r2;
    *s4 += r4;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    const std::size_t n8 = n & ~std::size_t{7};
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i < n8; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    double r = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; i++) {
        r += a[i] * b[i];
    }
    return r;
}

}  // namespace

const KernelTable& avx2_kernels_table() {
    static const KernelTable table{Isa::Avx2, skew_rank2_avx2, accumulate_pow24_avx2, dot_avx2};
    return table;
}

}  // namespace sedyn::kernels
