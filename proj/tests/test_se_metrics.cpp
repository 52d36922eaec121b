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

#include <cmath>
#include <random>

#include "sedyn/errors.hpp"
#include "sedyn/exact_oracle.hpp"
#include "sedyn/se_metrics.hpp"

namespace sedyn {
namespace {

TEST(SeReport, PolarizedQubit) {
    MomentSums m{1, 2.0, 2.0, 2, 2};
    SEReport r = se_report(m);
    EXPECT_NEAR(r.M2, 0.0, 1e-15);
    EXPECT_NEAR(r.S2, 0.0, 1e-15);
    EXPECT_NEAR(r.T2, -1.0, 1e-15);
}

TEST(SeReport, MagicQubit) {
    MomentSums m{1, 2.0, 1.5, 2, 2};
    SEReport r = se_report(m);
    EXPECT_NEAR(r.M2, std::log2(4.0 / 3.0), 1e-12);
    EXPECT_NEAR(r.M2, 0.41504, 1e-5);
    EXPECT_NEAR(r.S2, 0.0, 1e-15);
}

TEST(SeReport, Identities) {
    for (double t : {0.0, 0.4, 1.5, 6.0}) {
        for (int L : {1, 3, 6}) {
            SEReport r = se_report(evolved_correlation(QuenchSpec::thermodynamic(1e4, 1.0), L, t));
            EXPECT_NEAR(r.M2, r.T4 - r.T2, 1e-12);
            EXPECT_NEAR(r.T2, r.S2 - L, 1e-12);
            EXPECT_NEAR(r.T4, -std::log2(r.W) - L, 1e-12);
            EXPECT_NEAR(r.S2, -std::log2(r.purity), 1e-12);
            EXPECT_GE(r.M2, -1e-9);
            EXPECT_GT(r.purity, 0.0);
            EXPECT_LE(r.purity, 1 + 1e-12);
            EXPECT_LE(r.W, 1 + 1e-12);
        }
    }
}

TEST(SeReport, RejectsInconsistentSums) {
    EXPECT_THROW(se_report(MomentSums{1, 0.5, 0.5, 2, 2}), InvalidInput);
    EXPECT_THROW(se_report(MomentSums{1, 2.0, 2.5, 2, 2}), InvalidInput);
}

TEST(SeReport, AdditiveOnDecoupledBlocks) {
    MajoranaCorrelation a = evolved_correlation(QuenchSpec::thermodynamic(1e4, 0.5), 3, 1.2);
    MajoranaCorrelation b = evolved_correlation(QuenchSpec::thermodynamic(0.3, 1.7), 4, 0.7);
    SEReport ra = se_report(a), rb = se_report(b);
    SEReport rab = se_report(MajoranaCorrelation::direct_sum(a, b));
    EXPECT_NEAR(rab.M2, ra.M2 + rb.M2, 1e-9);
    EXPECT_NEAR(rab.S2, ra.S2 + rb.S2, 1e-9);
}

TEST(SeReport, StrongFieldGroundStateIsNearlyStabilizer) {
    // M2 of the lambda ground state vanishes as lambda^-2 when lambda grows.
    MajoranaCorrelation g4 = evolved_correlation(QuenchSpec::thermodynamic(1e4, 0.5), 12, 0.0);
    MajoranaCorrelation g3 = evolved_correlation(QuenchSpec::thermodynamic(1e3, 0.5), 12, 0.0);
    for (int L = 1; L <= 12; L++) {
        const double m4 = se_report(g4.leading_block(L)).M2, m3 = se_report(g3.leading_block(L)).M2;
        EXPECT_LT(m4, 1e-6) << L;
        EXPECT_NEAR(m3 / m4, 100.0, 1.0) << L;
    }
}

TEST(SeReport, CliffordInvariance) {
    std::mt19937_64 rng(2026);
    const int N = 8, L = 3;
    oracle::DenseState psi = oracle::evolve(oracle::ground_state(N, 1e4), 0.5, 1.1);
    Eigen::MatrixXcd rho = oracle::reduced_density(psi, L);
    const double m2 = se_report(oracle::brute_moments(rho)).M2;
    EXPECT_GT(m2, 0.1);
    for (int c = 0; c < 50; c++) {
        auto circuit = oracle::random_clifford_circuit(L, 20, rng);
        Eigen::MatrixXcd r2 = oracle::apply_clifford(rho, circuit);
        EXPECT_NEAR(se_report(oracle::brute_moments(r2)).M2, m2, 1e-9) << c;
    }
}

}  // namespace
}  // namespace sedyn
