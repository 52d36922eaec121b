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

#include <optional>
#include <vector>

#include "sedyn/fermion_core.hpp"

namespace sedyn {

constexpr int kMaxEchoSites = 2000;

/// |<psi0| exp(-i H(lambda1) t) |psi0>|^2 on a finite chain, as a product over
/// positive even-sector momenta.
double loschmidt_echo(const QuenchSpec& spec, double t);

/// -ln of the echo, accurate where the echo underflows.
double loschmidt_rate(const QuenchSpec& spec, double t);

struct RevivalPeak {
    double t = 0;
    double echo = 0;
    /// Depth of the dip in -ln(echo) relative to its higher surroundings.
    double prominence = 0;
};

struct EchoSeries {
    QuenchSpec spec;
    std::vector<double> t;
    std::vector<double> echo;
    std::vector<double> rate;  // -ln(echo)
    std::vector<RevivalPeak> peaks;
};

/// Evaluates the echo on t_grid (increasing).
EchoSeries echo_series(const QuenchSpec& spec, const std::vector<double>& t_grid);

/// Default grid: step N/4000 up to `horizon_over_n` * N.
std::vector<double> default_echo_grid(int n_sites, double horizon_over_n = 1.0);

struct RevivalOptions {
    /// Baseline window in units of N / v_guess, v_guess = 2 max(1, lambda1).
    double baseline_lo = 0.2;
    double baseline_hi = 0.8;
    /// A revival must lower -ln(echo) by at least this multiple of the baseline level...
    double min_prominence_vs_baseline = 0.3;
    /// ...and reach this fraction of the most prominent dip in the horizon.
    double min_prominence_vs_best = 0.7;
};

enum class RevivalStatus { Found, NoRevival };

struct RevivalReport {
    RevivalStatus status = RevivalStatus::NoRevival;
    double baseline = 0;  // median -ln(echo) over the baseline window
    std::vector<RevivalPeak> peaks;
    std::optional<double> t_revival;
};

/// Detects revivals in the series and stores the accepted peaks in series.peaks.
RevivalReport revival_times(EchoSeries& series, const RevivalOptions& opts = {});

/// N / (2 T_rev).
double lr_speed(double t_revival, int n_sites);

}  // namespace sedyn
