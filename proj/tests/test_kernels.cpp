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

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "sedyn/kernels/kernels.hpp"

namespace sedyn::kernels {
namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<double> v(n);
    for (double& x : v) {
        x = g(rng);
    }
    return v;
}

const KernelTable* wide() {
    return avx2_kernels();
}

TEST(Kernels, ScalarTableIsScalar) {
    EXPECT_EQ(scalar_kernels().isa, Isa::Scalar);
    EXPECT_EQ(isa_name(Isa::Scalar), "scalar");
}

TEST(Kernels, DotMatchesScalar) {
    if (wide() == nullptr) {
        GTEST_SKIP() << "AVX2 unavailable";
    }
    std::mt19937_64 rng(1);
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 31u, 64u, 1001u}) {
        auto a = random_vec(n, rng), b = random_vec(n, rng);
        double s = scalar_kernels().dot(a.data(), b.data(), n);
        double v = wide()->dot(a.data(), b.data(), n);
        double scale = 0;
        for (std::size_t i = 0; i < n; i++) {
            scale += std::abs(a[i] * b[i]);
        }
        EXPECT_NEAR(s, v, 1e-14 * (1 + scale)) << n;
    }
}

TEST(Kernels, Pow24MatchesScalar) {
    if (wide() == nullptr) {
        GTEST_SKIP() << "AVX2 unavailable";
    }
    std::mt19937_64 rng(2);
    for (std::size_t n : {1u, 2u, 5u, 8u, 9u, 100u, 513u}) {
        auto x = random_vec(n, rng);
        double s2a = 0.5, s4a = 0.25, s2b = 0.5, s4b = 0.25;
        scalar_kernels().accumulate_pow24(x.data(), n, 0.7, &s2a, &s4a);
        wide()->accumulate_pow24(x.data(), n, 0.7, &s2b, &s4b);
        EXPECT_NEAR(s2a, s2b, 1e-13 * s2a) << n;
        EXPECT_NEAR(s4a, s4b, 1e-13 * s4a) << n;
    }
}

TEST(Kernels, SkewRank2MatchesScalar) {
    if (wide() == nullptr) {
        GTEST_SKIP() << "AVX2 unavailable";
    }
    std::mt19937_64 rng(3);
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 8u, 13u, 28u}) {
        const std::size_t ld = n + 3;
        auto src = random_vec(n * ld, rng);
        auto u = random_vec(n, rng), w = random_vec(n, rng);
        std::vector<double> d1(n * ld, 0), d2(n * ld, 0);
        scalar_kernels().skew_rank2(src.data(), ld, d1.data(), ld, n, u.data(), w.data());
        wide()->skew_rank2(src.data(), ld, d2.data(), ld, n, u.data(), w.data());
        for (std::size_t i = 0; i < n; i++) {
            for (std::size_t j = 0; j < n; j++) {
                double expect = src[i * ld + j] - u[i] * w[j] + w[i] * u[j];
                EXPECT_NEAR(d1[i * ld + j], expect, 1e-13);
                EXPECT_NEAR(d2[i * ld + j], expect, 1e-13);
            }
        }
    }
}

TEST(Kernels, SkewRank2InPlace) {
    std::mt19937_64 rng(4);
    const std::size_t n = 6;
    auto a = random_vec(n * n, rng);
    auto ref = a;
    auto u = random_vec(n, rng), w = random_vec(n, rng);
    active_kernels().skew_rank2(a.data(), n, a.data(), n, n, u.data(), w.data());
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = 0; j < n; j++) {
            EXPECT_NEAR(a[i * n + j], ref[i * n + j] - u[i] * w[j] + w[i] * u[j], 1e-13);
        }
    }
}

TEST(Kernels, SelectIsaRoundTrip) {
    const Isa before = active_kernels().isa;
    EXPECT_TRUE(select_isa(Isa::Scalar));
    EXPECT_EQ(active_kernels().isa, Isa::Scalar);
    EXPECT_EQ(select_isa(Isa::Avx2), wide() != nullptr);
    select_isa(before);
    EXPECT_EQ(active_kernels().isa, before);
}

}  // namespace
}  // namespace sedyn::kernels
