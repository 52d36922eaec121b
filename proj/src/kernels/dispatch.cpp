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

#include <atomic>
#include <cstdlib>
#include <string>

#include "sedyn/kernels/kernels.hpp"

namespace sedyn::kernels {

#if defined(SEDYN_HAVE_AVX2_TU)
const KernelTable& avx2_kernels_table();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(SEDYN_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* initial_selection() {
    const KernelTable* best = avx2_kernels();
    if (best == nullptr) {
        best = &scalar_kernels();
    }
    if (const char* env = std::getenv("SEDYN_ISA")) {
        std::string want(env);
        if (want == "scalar") {
            return &scalar_kernels();
        }
    }
    return best;
}

std::atomic<const KernelTable*>& selection() {
    static std::atomic<const KernelTable*> sel{initial_selection()};
    return sel;
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar:
            return "scalar";
        case Isa::Avx2:
            return "avx2";
    }
    return "unknown";
}

const KernelTable* avx2_kernels() {
#if defined(SEDYN_HAVE_AVX2_TU)
    static const bool ok = cpu_has_avx2();
    return ok ? &avx2_kernels_table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active_kernels() {
    return *selection().load(std::memory_order_acquire);
}

bool select_isa(Isa isa) {
    const KernelTable* t = nullptr;
    switch (isa) {
        case Isa::Scalar:
            t = &scalar_kernels();
            break;
        case Isa::Avx2:
            t = avx2_kernels();
            break;
    }
    if (t == nullptr) {
        return false;
    }
    selection().store(t, std::memory_order_release);
    return true;
}

}  // namespace sedyn::kernels
