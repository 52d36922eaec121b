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

#include "sedyn/errors.hpp"
#include "sedyn/quench_analysis.hpp"

namespace sedyn {
namespace {

std::vector<double> grid(double start, double stop, double step) {
    std::vector<double> t;
    for (long i = 0; start + i * step <= stop + 1e-9; i++) {
        t.push_back(start + i * step);
    }
    return t;
}

std::vector<int> range(int a, int b) {
    std::vector<int> v;
    for (int i = a; i <= b; i++) {
        v.push_back(i);
    }
    return v;
}

TEST(Equilibration, ConstantSeries) {
    auto t = grid(0, 5, 0.1);
    std::vector<double> s(t.size(), 2.0);
    Equilibration e = equilibration_time(t, s, 2.0, 0.05, 5.0);
    ASSERT_TRUE(e.time);
    EXPECT_EQ(*e.time, 0.0);
}

TEST(Equilibration, DampedOscillation) {
    auto t = grid(0, 20, 0.01);
    std::vector<double> s;
    for (double x : t) {
        s.push_back(1 + std::exp(-x) * std::cos(x));
    }
    // Independent scan for the last excursion beyond the band.
    std::size_t last_out = 0;
    for (std::size_t j = 0; j < t.size(); j++) {
        if (std::abs(std::exp(-t[j]) * std::cos(t[j])) > 0.05) {
            last_out = j;
        }
    }
    Equilibration e = equilibration_time(t, s, 1.0, 0.05, 20.0);
    ASSERT_TRUE(e.time);
    EXPECT_DOUBLE_EQ(*e.time, t[last_out + 1]);
    EXPECT_NEAR(*e.time, 3.0, 0.1);
}

TEST(Equilibration, NotEquilibrated) {
    auto t = grid(0, 10, 0.1);
    std::vector<double> s;
    for (double x : t) {
        s.push_back(1 + 0.5 * std::cos(x));
    }
    Equilibration e = equilibration_time(t, s, 1.0, 0.05, 10.0);
    EXPECT_EQ(e.status, EquilibrationStatus::NotEquilibrated);
    EXPECT_FALSE(e.time);
}

TEST(Equilibration, AbsoluteFallbackForTinyReference) {
    auto t = grid(0, 4, 0.5);
    std::vector<double> s{1e-2, 5e-3, 5e-4, 2e-4, 1e-4, 0, 0, 0, 0};
    Equilibration e = equilibration_time(t, s, 0.0, 0.05, 4.0);
    EXPECT_TRUE(e.absolute_fallback);
    ASSERT_TRUE(e.time);
    EXPECT_DOUBLE_EQ(*e.time, 1.0);
}

TEST(Equilibration, MonotoneInTolerance) {
    auto t = grid(0, 20, 0.05);
    std::vector<double> s;
    for (double x : t) {
        s.push_back(3 + std::exp(-0.3 * x) * std::sin(2 * x));
    }
    double prev = INFINITY;
    for (double tol : {0.01, 0.02, 0.05, 0.1, 0.3}) {
        Equilibration e = equilibration_time(t, s, 3.0, tol, 20.0);
        ASSERT_TRUE(e.time);
        EXPECT_LE(*e.time, prev);
        prev = *e.time;
    }
}

TEST(SecondDifference, LinearIsZero) {
    std::vector<double> v;
    for (int L = 1; L <= 10; L++) {
        v.push_back(0.37 * L - 1.2);
    }
    for (double d : second_difference(v)) {
        EXPECT_NEAR(d, 0.0, 1e-14);
    }
    EXPECT_TRUE(second_difference({1.0, 2.0}).empty());
}

TEST(SecondDifference, ExponentialCorrection) {
    const double xi = 2.0;
    std::vector<double> v;
    for (int L = 1; L <= 12; L++) {
        v.push_back(std::exp(-L / xi) + 0.5 * L + 3);
    }
    auto d = second_difference(v);
    const double c = std::exp(1 / xi) + std::exp(-1 / xi) - 2;
    for (std::size_t i = 0; i < d.size(); i++) {
        const int L = static_cast<int>(i) + 2;
        EXPECT_NEAR(std::abs(d[i]), std::exp(-L / xi) * c, 1e-13);
        if (i > 0) {
            EXPECT_NEAR(d[i] / d[i - 1], std::exp(-0.5), 1e-10);
        }
    }
}

TEST(LocalityLength, AllZero) {
    auto L = range(2, 9);
    EXPECT_EQ(locality_length(L, std::vector<double>(L.size(), 0.0), 0.01), 2);
}

TEST(LocalityLength, ExponentialInversion) {
    const double c = std::exp(0.5) + std::exp(-0.5) - 2;
    auto L = range(2, 40);
    std::vector<double> d;
    for (int l : L) {
        d.push_back(c * std::exp(-l / 2.0));
    }
    EXPECT_EQ(locality_length(L, d, 0.01), static_cast<int>(std::ceil(2 * std::log(c / 0.01))));
}

TEST(LocalityLength, UnresolvedWithoutTail) {
    auto L = range(2, 6);
    EXPECT_FALSE(locality_length(L, {1, 1, 1, 1, 0.001}, 0.01));
    EXPECT_EQ(locality_length(L, {1, 1, 1, 0.001, 0.001}, 0.01), 5);
    EXPECT_FALSE(locality_length(L, {1, 0.001, 0.001, 1, 1}, 0.01));
}

TEST(LocalityLength, MonotoneInEpsilon) {
    auto L = range(2, 25);
    std::vector<double> d;
    for (int l : L) {
        d.push_back(std::exp(-0.7 * l) * (1.5 + std::cos(l)));
    }
    int prev = 1000;
    for (double eps : {1e-5, 1e-4, 1e-3, 1e-2, 1e-1}) {
        auto l = locality_length(L, d, eps);
        ASSERT_TRUE(l);
        EXPECT_LE(*l, prev);
        prev = *l;
    }
}

TEST(FitVelocity, ExactLine) {
    auto t = grid(0, 3, 0.25);
    std::vector<std::optional<int>> l;
    for (double x : t) {
        l.push_back(static_cast<int>(std::lround(2 + 4 * x)));
    }
    VelocityFit f = fit_velocity(t, l);
    EXPECT_EQ(f.status, FitStatus::Accepted);
    EXPECT_NEAR(f.slope, 4.0, 1e-12);
    EXPECT_NEAR(f.rms, 0.0, 1e-12);
    EXPECT_DOUBLE_EQ(f.t_begin, 0.5);
}

TEST(FitVelocity, ThreeSitesPerUnitTime) {
    std::vector<double> t{0, 1, 2, 3, 4, 5};
    std::vector<std::optional<int>> l{2, 5, 8, 11, 14, 17};
    VelocityFit f = fit_velocity(t, l);
    EXPECT_EQ(f.status, FitStatus::Accepted);
    EXPECT_NEAR(f.slope, 3.0, 1e-12);
    EXPECT_NEAR(f.rms, 0.0, 1e-12);
}

TEST(FitVelocity, InsufficientWindow) {
    std::vector<double> t{0, 1, 2, 3, 4};
    std::vector<std::optional<int>> l{2, 5, 8, std::nullopt, 14};
    EXPECT_EQ(fit_velocity(t, l).status, FitStatus::InsufficientWindow);
}

TEST(FitVelocity, StopsAtRecedingFront) {
    std::vector<double> t{0, 1, 2, 3, 4, 5, 6};
    std::vector<std::optional<int>> l{2, 4, 6, 8, 10, 9, 9};
    VelocityFit f = fit_velocity(t, l);
    EXPECT_EQ(f.points, 4);
    EXPECT_NEAR(f.slope, 2.0, 1e-12);
}

TEST(SpreadingVelocity, TakesMaximum) {
    VelocityFit a, b;
    a.status = FitStatus::Accepted;
    a.slope = 2.5;
    b.status = FitStatus::Accepted;
    b.slope = 5.0;
    EXPECT_DOUBLE_EQ(*spreading_velocity(a, b).v_s, 5.0);
    b.status = FitStatus::PoorFit;
    EXPECT_DOUBLE_EQ(*spreading_velocity(a, b).v_s, 2.5);
    a.status = FitStatus::InsufficientWindow;
    EXPECT_FALSE(spreading_velocity(a, b).v_s);
}

TEST(ExtrapolateM2, Linear) {
    for (int L = 6; L <= 20; L++) {
        EXPECT_NEAR(extrapolate_M2(0.4 * 4 + 0.1, 0.4 * 5 + 0.1, 4, L), 0.4 * L + 0.1, 1e-12);
    }
}

TEST(ExtrapolateM2, GroundState) {
    MajoranaCorrelation g = ground_correlation(0.5, ThermodynamicLimit{}, 10);
    const double m4 = se_report(g.leading_block(4)).M2;
    const double m5 = se_report(g.leading_block(5)).M2;
    EXPECT_NEAR(extrapolate_M2(m4, m5, 4, 10), se_report(g).M2, 1e-3);
}

TEST(ExtrapolateM2, DephasedState) {
    MajoranaCorrelation g = gge_correlation(QuenchSpec::thermodynamic(1e4, 0.5), 10);
    const double m6 = se_report(g.leading_block(6)).M2;
    const double m7 = se_report(g.leading_block(7)).M2;
    EXPECT_NEAR(extrapolate_M2(m6, m7, 6, 10), se_report(g).M2, 5e-2);
}

TEST(TimeScan, LargeQuenchPlateau) {
    QuenchSpec s = QuenchSpec::thermodynamic(1e4, 0.5);
    auto t = grid(0, 8, 0.1);
    ScanResult r = time_scan(s, range(1, 8), t);
    ASSERT_EQ(r.table.size(), 8u);
    ASSERT_EQ(r.dephased_row.size(), 8u);
    for (int L = 1; L <= 8; L++) {
        EXPECT_LT(r.at(L, 0).M2, 1e-6);
        const double ref = r.dephased_row[L - 1].M2;
        EXPECT_NEAR(r.at(L, t.size() - 1).M2, ref, 0.05 * ref) << L;
    }
}

TEST(TimeScan, NoQuenchIsConstant) {
    auto t = grid(0, 4, 0.5);
    ScanResult r = time_scan(QuenchSpec::thermodynamic(0.5, 0.5), range(1, 5), t);
    for (int L = 1; L <= 5; L++) {
        for (std::size_t j = 0; j < t.size(); j++) {
            EXPECT_NEAR(r.at(L, j).M2, r.at(L, 0).M2, 1e-9);
        }
    }
}

TEST(TimeScan, CriticalPlateauBound) {
    ScanResult r = time_scan(QuenchSpec::thermodynamic(1e4, 1.0), {8}, {0.0});
    EXPECT_LE(r.dephased_row[0].M2, 4.0);
}

TEST(TimeScan, CheckpointAndResume) {
    QuenchSpec s = QuenchSpec::thermodynamic(1e4, 0.5);
    std::vector<double> t{0.0, 0.5};
    std::vector<std::size_t> seen;
    ScanOptions o;
    o.on_row = [&](const ScanResult&, std::size_t i) { seen.push_back(i); };
    ScanResult full = time_scan(s, {1, 2, 3}, t, o);
    EXPECT_EQ(seen, (std::vector<std::size_t>{0, 1, 2}));

    ScanOptions resume;
    std::vector<SEReport> planted(2);
    planted[0].L = 2;
    planted[0].M2 = 123.0;
    planted[1].L = 2;
    resume.completed.emplace_back(2, planted);
    ScanResult r = time_scan(s, {1, 2, 3}, t, resume);
    EXPECT_EQ(r.at(2, 0).M2, 123.0);
    EXPECT_EQ(r.at(3, 1).M2, full.at(3, 1).M2);
}

TEST(TimeScan, RejectsBadGrids) {
    QuenchSpec s = QuenchSpec::thermodynamic(1e4, 0.5);
    EXPECT_THROW(time_scan(s, {2, 1}, {0.0}), InvalidInput);
    EXPECT_THROW(time_scan(s, {1}, {1.0, 0.5}), InvalidInput);
    EXPECT_THROW(time_scan(s, {}, {0.0}), InvalidInput);
    EXPECT_THROW(time_scan(s, {20}, {0.0}), ResourceError);
}

TEST(Locality, SecondDifferenceIdentity) {
    ScanOptions o;
    o.dephased = false;
    ScanResult r = time_scan(QuenchSpec::thermodynamic(1e4, 1.0), range(1, 8), {0.0, 0.5, 1.0}, o);
    LocalityProfile p2 = locality_profile(r, LocalityKind::T2, 0.01);
    LocalityProfile p4 = locality_profile(r, LocalityKind::T4, 0.01);
    for (std::size_t j = 0; j < r.t_grid.size(); j++) {
        std::vector<double> m2, t2, t4;
        for (int L = 1; L <= 8; L++) {
            m2.push_back(r.at(L, j).M2);
            t2.push_back(r.at(L, j).T2);
            t4.push_back(r.at(L, j).T4);
        }
        auto dm = second_difference(m2), d2 = second_difference(t2), d4 = second_difference(t4);
        for (std::size_t i = 0; i < dm.size(); i++) {
            EXPECT_NEAR(dm[i], d4[i] - d2[i], 1e-12);
            EXPECT_DOUBLE_EQ(p2.abs_d2[j][i], std::abs(d2[i]));
            EXPECT_DOUBLE_EQ(p4.abs_d2[j][i], std::abs(d4[i]));
        }
    }
}

TEST(Locality, NoQuenchLengthIsConstant) {
    ScanOptions o;
    o.dephased = false;
    ScanResult r = time_scan(QuenchSpec::thermodynamic(0.5, 0.5), range(1, 9), grid(0, 2, 0.5), o);
    LocalityProfile p = locality_profile(r, LocalityKind::T2, 0.01);
    for (const auto& l : p.l_eps) {
        EXPECT_EQ(l, p.l_eps.front());
    }
}

TEST(Locality, CriticalT2Grows) {
    ScanOptions o;
    o.dephased = false;
    ScanResult r = time_scan(QuenchSpec::thermodynamic(1e4, 1.0), range(1, 12), grid(0, 2, 0.25), o);
    LocalityProfile p = locality_profile(r, LocalityKind::T2, 0.01);
    ASSERT_EQ(p.fit.status, FitStatus::Accepted);
    EXPECT_NEAR(p.fit.slope, 5.0, 0.3 * 5.0);
    EXPECT_THROW(locality_profile(time_scan(QuenchSpec::thermodynamic(1e4, 1.0), {1, 3, 4}, {0.0}, o),
                                  LocalityKind::T2, 0.01),
                 InvalidInput);
}

TEST(LinearFit, Basics) {
    LinearFit f = linear_fit({1, 2, 3, 4}, {3, 5, 7, 9});
    EXPECT_NEAR(f.slope, 2, 1e-12);
    EXPECT_NEAR(f.intercept, 1, 1e-12);
    EXPECT_NEAR(f.r2, 1, 1e-12);
    EXPECT_THROW(linear_fit({1}, {1}), InvalidInput);
}

}  // namespace
}  // namespace sedyn
