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

#pragma once

#include <cstddef>
#include <string_view>

namespace sedyn::kernels {

/// Instruction set a kernel table was built for.
enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// The data-parallel inner loops shared by the Pfaffian elimination, the
/// Schur-complement moment enumeration and the momentum-space correlators.
///
/// Every variant must agree with the scalar table to a few ulps; they are not
/// required to be bit-identical (FMA contraction differs), but each variant is
/// deterministic on its own.
struct KernelTable {
    Isa isa;

    /// dst[i*ldd + j] = src[i*lds + j] - u[i]*w[j] + w[i]*u[j] for i, j < n.
    ///
    /// This is the antisymmetric rank-2 update used both by Parlett-Reid
    /// elimination (src == dst allowed) and by the Schur complement step.
    void (*skew_rank2)(const double* src, std::size_t lds, double* dst, std::size_t ldd, std::size_t n,
                       const double* u, const double* w);

    /// Adds sum((scale*x[i])^2) to *s2 and sum((scale*x[i])^4) to *s4.
    void (*accumulate_pow24)(const double* x, std::size_t n, double scale, double* s2, double* s4);

    /// Plain dot product.
    double (*dot)(const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr when the AVX2 translation unit was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

/// The table selected at startup. Honors SEDYN_ISA=scalar|avx2 in the environment,
/// otherwise picks the widest supported variant.
const KernelTable& active_kernels();

/// Overrides the runtime selection (tests and benchmarks). Returns false if the
/// requested ISA is unavailable, in which case the selection is unchanged.
bool select_isa(Isa isa);

}  // namespace sedyn::kernels
