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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sedyn/se_metrics.hpp"

namespace sedyn {

struct ScanResult {
    QuenchSpec spec;
    std::vector<int> L_grid;
    std::vector<double> t_grid;
    /// table[i][j]: block L_grid[i] at time t_grid[j].
    std::vector<std::vector<SEReport>> table;
    /// Per L, the dephased state; empty when not requested.
    std::vector<SEReport> dephased_row;

    const SEReport& at(int L, std::size_t t_index) const;
    std::vector<double> series(int L, double SEReport::*field) const;
};

struct ScanOptions {
    MomentOptions moments;
    bool dephased = true;
    /// Called after each completed L with the finished rows (checkpointing).
    std::function<void(const ScanResult&, std::size_t L_index)> on_row;
    /// Rows already computed (resume); keyed by L, in t_grid order.
    std::vector<std::pair<int, std::vector<SEReport>>> completed;
    std::vector<std::pair<int, SEReport>> completed_dephased;
};

/// Fills the (L, t) table; L_grid and t_grid must be increasing.
ScanResult time_scan(const QuenchSpec& spec, const std::vector<int>& L_grid, const std::vector<double>& t_grid,
                     const ScanOptions& opts = {});

enum class EquilibrationStatus { Equilibrated, NotEquilibrated };

struct Equilibration {
    EquilibrationStatus status = EquilibrationStatus::NotEquilibrated;
    std::optional<double> time;
    /// ref < 1e-6: the tolerance was applied as an absolute 1e-3 bits.
    bool absolute_fallback = false;
};

/// Smallest sampled t* <= horizon such that |series(t) - ref| <= tol * ref for all sampled t in [t*, horizon].
Equilibration equilibration_time(const std::vector<double>& t, const std::vector<double>& series, double ref,
                                 double tol, double horizon);

/// T(L+1) - 2 T(L) + T(L-1) at each interior point.
std::vector<double> second_difference(const std::vector<double>& values);

/// Smallest interior L* with |d2(L)| <= eps for every available L >= L*; nullopt (unresolved)
/// when fewer than min_tail points satisfy the bound at the end of the range.
std::optional<int> locality_length(const std::vector<int>& interior_L, const std::vector<double>& abs_d2,
                                   double eps, int min_tail = 2);

enum class FitStatus { Accepted, InsufficientWindow, PoorFit };

struct VelocityFit {
    FitStatus status = FitStatus::InsufficientWindow;
    double slope = 0;
    double intercept = 0;
    double rms = 0;
    double t_begin = 0;
    double t_end = 0;
    int points = 0;
};

/// Least-squares l = slope * t + intercept over the ballistic window: from the first t where l
/// exceeds l(t_0) by at least transient_sites through the following resolved, non-decreasing points.
/// Accepted when >= min_points resolved points and RMS residual < max_rms sites.
VelocityFit fit_velocity(const std::vector<double>& t, const std::vector<std::optional<int>>& l_eps,
                         int transient_sites = 2, int min_points = 4, double max_rms = 0.5);

struct SpreadingVelocity {
    VelocityFit T2;
    VelocityFit T4;
    /// Max of the accepted slopes; nullopt when neither fit is accepted.
    std::optional<double> v_s;
};

SpreadingVelocity spreading_velocity(const VelocityFit& T2, const VelocityFit& T4);

enum class LocalityKind { T2, T4 };

struct LocalityProfile {
    LocalityKind kind = LocalityKind::T2;
    double epsilon = 0.01;
    std::vector<double> t_grid;
    std::vector<int> interior_L;
    /// abs_d2[j][i]: |second difference| at time j, interior L index i.
    std::vector<std::vector<double>> abs_d2;
    std::vector<std::optional<int>> l_eps;
    VelocityFit fit;
};

/// Requires a scan over consecutive L.
LocalityProfile locality_profile(const ScanResult& scan, LocalityKind kind, double epsilon);

/// Delta (L - L0) + M2(L0) with Delta = M2(L0 + 1) - M2(L0).
double extrapolate_M2(double m2_L0, double m2_L0_plus_1, int L0, int L);

/// Ordinary least squares y = a x + b with coefficient of determination.
struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
    double rms = 0;
};
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace sedyn
