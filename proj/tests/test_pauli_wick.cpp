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
#include "sedyn/pauli_wick.hpp"

namespace sedyn {
namespace {

Eigen::MatrixXd random_antisymmetric(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; i++) {
        for (int j = i + 1; j < n; j++) {
            a(i, j) = g(rng);
            a(j, i) = -a(i, j);
        }
    }
    return a;
}

MajoranaCorrelation single_site(double z) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
    a(0, 1) = z;
    a(1, 0) = -z;
    return MajoranaCorrelation(a, 0.0);
}

TEST(PauliString, ParseAndPrint) {
    PauliString p = PauliString::parse("XIZY");
    EXPECT_EQ(p.n_sites, 4);
    EXPECT_EQ(p.x_bits, 0b1001u);
    EXPECT_EQ(p.z_bits, 0b1100u);
    EXPECT_EQ(p.str(), "XIZY");
    EXPECT_TRUE(PauliString::parse("III").is_identity());
    EXPECT_THROW(PauliString::parse("XQ"), InvalidInput);
}

TEST(JwMap, SingleZ) {
    MajoranaMonomial m = jw_map(PauliString::parse("IZ"));
    EXPECT_EQ(m.indices, (std::vector<int>{2, 3}));
    EXPECT_EQ(m.phase_power, 3);  // -i
}

TEST(JwMap, SingleXIsOdd) {
    MajoranaMonomial m = jw_map(PauliString::parse("X"));
    EXPECT_EQ(m.indices, (std::vector<int>{0}));
    EXPECT_TRUE(m.parity_odd());
    EXPECT_EQ(pauli_expectation(PauliString::parse("XI"), MajoranaCorrelation::direct_sum(single_site(1.0), single_site(1.0))), 0.0);
}

TEST(JwMap, NeighbourXX) {
    MajoranaMonomial m = jw_map(PauliString::parse("XX"));
    EXPECT_EQ(m.indices, (std::vector<int>{1, 2}));
    EXPECT_EQ(m.phase_power, 3);
}

TEST(JwMap, HermitianPhases) {
    // A Hermitian product of m Majoranas carries phase i^{m(m-1)/2} up to sign.
    for (std::uint32_t x = 0; x < 16; x++) {
        for (std::uint32_t z = 0; z < 16; z++) {
            MajoranaMonomial m = jw_map(PauliString{x, z, 4});
            const int k = static_cast<int>(m.indices.size());
            EXPECT_EQ((m.phase_power - k * (k - 1) / 2) & 1, 0) << x << " " << z;
        }
    }
}

TEST(Pfaffian, SmallCases) {
    Eigen::MatrixXd a(2, 2);
    a << 0, 1, -1, 0;
    EXPECT_DOUBLE_EQ(pfaffian(a), 1.0);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(4, 4);
    b(0, 1) = 1;
    b(0, 2) = 3;
    b(0, 3) = 5;
    b(1, 2) = 6;
    b(1, 3) = 4;
    b(2, 3) = 2;
    Eigen::MatrixXd bt = b - b.transpose();
    EXPECT_NEAR(pfaffian(bt), 20.0, 1e-12);
    EXPECT_DOUBLE_EQ(pfaffian(Eigen::MatrixXd(0, 0)), 1.0);
}

TEST(Pfaffian, RejectsBadInput) {
    EXPECT_THROW(pfaffian(Eigen::MatrixXd::Zero(3, 3)), InvalidInput);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
    a(0, 1) = 1;
    EXPECT_THROW(pfaffian(a), InvalidInput);
}

TEST(Pfaffian, SquareIsDeterminant) {
    std::mt19937_64 rng(11);
    for (int n = 2; n <= 24; n += 2) {
        for (int rep = 0; rep < 5; rep++) {
            Eigen::MatrixXd a = random_antisymmetric(n, rng);
            const double pf = pfaffian(a);
            const double det = a.determinant();
            EXPECT_LT(std::abs(pf * pf - det), 1e-8 * std::abs(det)) << n;
        }
    }
}

TEST(PauliExpectation, IdentityAndPolarized) {
    MajoranaCorrelation g = evolved_correlation(QuenchSpec::thermodynamic(1e4, 0.5), 3, 0.0);
    EXPECT_DOUBLE_EQ(pauli_expectation(PauliString::parse("III"), g), 1.0);
    for (const char* z : {"ZII", "IZI", "IIZ"}) {
        const double v = pauli_expectation(PauliString::parse(z), g);
        EXPECT_GT(v, 1 - 1e-3);
        EXPECT_LE(v, 1.0);
    }
}

TEST(PauliExpectation, GroundStateXXMatchesStatevector) {
    const double lam = 0.5;
    MajoranaCorrelation g = ground_correlation(lam, FiniteChain{12}, 2);
    Eigen::MatrixXcd rho = oracle::reduced_density(oracle::ground_state(12, lam), 2);
    PauliString xx = PauliString::parse("XX");
    EXPECT_NEAR(pauli_expectation(xx, g), oracle::pauli_expectation(rho, xx), 1e-10);
    // The infinite chain differs from N = 12 by a finite-size correction of order lambda^N.
    MajoranaCorrelation inf = ground_correlation(lam, ThermodynamicLimit{}, 2);
    EXPECT_NEAR(pauli_expectation(xx, inf), pauli_expectation(xx, g), 1e-3);
}

TEST(PauliExpectation, BoundedAndMatchesDenseOnSample) {
    std::mt19937_64 rng(5);
    const int N = 10;
    oracle::DenseState psi0 = oracle::ground_state(N, 3.0);
    for (int L : {3, 5}) {
        for (double t : {0.4, 1.7}) {
            MajoranaCorrelation g = evolved_correlation(QuenchSpec::finite(3.0, 0.8, N), L, t);
            Eigen::MatrixXcd rho = oracle::reduced_density(oracle::evolve(psi0, 0.8, t), L);
            std::uniform_int_distribution<std::uint32_t> pick(0, (1u << L) - 1);
            for (int s = 0; s < 1000; s++) {
                PauliString p{pick(rng), pick(rng), L};
                const double a = pauli_expectation(p, g);
                const double b = oracle::pauli_expectation(rho, p);
                EXPECT_LE(std::abs(a), 1 + 1e-9);
                EXPECT_NEAR(a * a, b * b, 1e-8) << p.str();
            }
        }
    }
}

TEST(MomentSums, PolarizedSingleSite) {
    MomentSums m = moment_sums(single_site(1.0));
    EXPECT_NEAR(m.sum_sq, 2.0, 1e-15);
    EXPECT_NEAR(m.sum_quad, 2.0, 1e-15);
}

TEST(MomentSums, MagicSingleQubitThroughDenseOracle) {
    // <X> = <Z> = 1/sqrt2, <Y> = 0.
    Eigen::MatrixXcd rho(2, 2);
    const double h = 0.5 / std::sqrt(2.0);
    rho << 0.5 + h, h, h, 0.5 - h;
    MomentSums m = oracle::brute_moments(rho);
    EXPECT_NEAR(m.sum_sq, 2.0, 1e-12);
    EXPECT_NEAR(m.sum_quad, 1.5, 1e-12);
}

TEST(MomentSums, MatchesStatevectorAfterQuench) {
    const int N = 12, L = 4;
    oracle::DenseState psi0 = oracle::ground_state(N, 1e4);
    MomentSums a = moment_sums(evolved_correlation(QuenchSpec::finite(1e4, 0.5, N), L, 0.5));
    MomentSums b = oracle::brute_moments(oracle::reduced_density(oracle::evolve(psi0, 0.5, 0.5), L));
    EXPECT_NEAR(a.sum_sq, b.sum_sq, 1e-7);
    EXPECT_NEAR(a.sum_quad, b.sum_quad, 1e-7);
}

TEST(MomentSums, ParityCounts) {
    for (int L = 1; L <= 8; L++) {
        MomentSums m = moment_sums(evolved_correlation(QuenchSpec::thermodynamic(1e4, 1.0), L, 0.6));
        const std::uint64_t half = std::uint64_t{1} << (2 * L - 1);
        EXPECT_EQ(m.even_strings, half);
        EXPECT_EQ(m.skipped_odd, half);
    }
}

TEST(MomentSums, Bounds) {
    for (int L = 1; L <= 7; L++) {
        MomentSums m = moment_sums(evolved_correlation(QuenchSpec::thermodynamic(0.3, 1.4), L, 1.1));
        EXPECT_GE(m.sum_quad, 1 - 1e-12);
        EXPECT_LE(m.sum_quad, m.sum_sq + 1e-12);
        EXPECT_LE(m.sum_sq, std::ldexp(1.0, L) * (1 + 1e-12));
    }
}

TEST(MomentSums, PurityIdentity) {
    // sum_sq = 2^L tr rho^2 = prod_j (1 + nu_j^2).
    for (double t : {0.0, 0.5, 2.0}) {
        MajoranaCorrelation g = evolved_correlation(QuenchSpec::thermodynamic(1e4, 0.5), 6, t);
        double prod = 1;
        for (double nu : g.symplectic_spectrum()) {
            prod *= 1 + nu * nu;
        }
        EXPECT_NEAR(moment_sums(g).sum_sq, prod, 1e-10 * prod);
    }
}

TEST(MomentSums, SchurMatchesReference) {
    MomentOptions ref;
    ref.method = MomentMethod::Reference;
    for (int L : {1, 2, 4, 6}) {
        for (double t : {0.0, 0.35, 1.9}) {
            MajoranaCorrelation g = evolved_correlation(QuenchSpec::thermodynamic(1e4, 0.5), L, t);
            MomentSums a = moment_sums(g);
            MomentSums b = moment_sums(g, ref);
            EXPECT_NEAR(a.sum_sq, b.sum_sq, 1e-11 * b.sum_sq);
            EXPECT_NEAR(a.sum_quad, b.sum_quad, 1e-11 * b.sum_quad);
        }
    }
}

TEST(MomentSums, TranslationInvariance) {
    const int N = 12, L = 3;
    oracle::DenseState psi = oracle::evolve(oracle::ground_state(N, 1e4), 0.5, 0.9);
    // Shift every site by s: amplitude of index b moves to rotl(b, s).
    for (int s : {1, 4, 7}) {
        oracle::DenseState shifted = psi;
        for (Eigen::Index b = 0; b < psi.amplitudes.size(); b++) {
            const auto u = static_cast<std::uint32_t>(b);
            const std::uint32_t r = ((u << s) | (u >> (N - s))) & ((1u << N) - 1);
            shifted.amplitudes(r) = psi.amplitudes(b);
        }
        MomentSums a = oracle::brute_moments(oracle::reduced_density(psi, L));
        MomentSums b = oracle::brute_moments(oracle::reduced_density(shifted, L));
        EXPECT_NEAR(a.sum_sq, b.sum_sq, 1e-10);
        EXPECT_NEAR(a.sum_quad, b.sum_quad, 1e-10);
    }
    // Free-fermion side: the block starting at site s is a principal sub-block of a longer one.
    MajoranaCorrelation big = evolved_correlation(QuenchSpec::finite(1e4, 0.5, N), L + 4, 0.9);
    MomentSums lead = moment_sums(big.leading_block(L));
    for (int s = 1; s <= 4; s++) {
        MajoranaCorrelation sub(big.gamma().block(2 * s, 2 * s, 2 * L, 2 * L), 0.9);
        MomentSums m = moment_sums(sub);
        EXPECT_NEAR(m.sum_sq, lead.sum_sq, 1e-12);
        EXPECT_NEAR(m.sum_quad, lead.sum_quad, 1e-12);
    }
}

TEST(MomentSums, BitIdenticalAcrossRunsAndThreads) {
    MajoranaCorrelation g = evolved_correlation(QuenchSpec::thermodynamic(1e4, 1.0), 9, 1.3);
    MomentOptions o1, o4;
    o1.threads = 1;
    o4.threads = 4;
    MomentSums a = moment_sums(g, o1);
    MomentSums b = moment_sums(g, o4);
    MomentSums c = moment_sums(g, o4);
    EXPECT_EQ(a.sum_sq, b.sum_sq);
    EXPECT_EQ(a.sum_quad, b.sum_quad);
    EXPECT_EQ(b.sum_sq, c.sum_sq);
    EXPECT_EQ(b.sum_quad, c.sum_quad);
}

TEST(MomentSums, BlockLengthCap) {
    MomentOptions o;
    o.max_block_len = 5;
    EXPECT_THROW(moment_sums(evolved_correlation(QuenchSpec::thermodynamic(1e4, 1.0), 6, 0.0), o), ResourceError);
}

}  // namespace
}  // namespace sedyn
