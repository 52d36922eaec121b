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

#include "sedyn/kernels/kernels.hpp"

namespace sedyn::kernels {
namespace {

void skew_rank2_scalar(const double* src, std::size_t lds, double* dst, std::size_t ldd, std::size_t n,
                       const double* u, const double* w) {
    for (std::size_t i = 0; i < n; i++) {
        const double ui = u[i];
        const double wi = w[i];
        const double* s = src + i * lds;
        double* d = dst + i * ldd;
        for (std::size_t j = 0; j < n; j++) {
            d[j] = s[j] - ui * w[j] + wi * u[j];
        }
    }
}

void accumulate_pow24_scalar(const double* x, std::size_t n, double scale, double* s2, double* s4) {
    double a2 = 0;
    double a4 = 0;
    for (std::size_t i = 0; i < n; i++) {
        double v = scale * x[i];
        double v2 = v * v;
        a2 += v2;
        a4 += v2 * v2;
    }
    *s2 += a2;
    *s4 += a4;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0;
    for (std::size_t i = 0; i < n; i++) {
        acc += a[i] * b[i];
    }
    return acc;
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{Isa::Scalar, skew_rank2_scalar, accumulate_pow24_scalar, dot_scalar};
    return table;
}

}  // namespace sedyn::kernels
