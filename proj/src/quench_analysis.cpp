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

#include "sedyn/quench_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "sedyn/errors.hpp"

namespace sedyn {

const SEReport& ScanResult::at(int L, std::size_t t_index) const {
    auto it = std::find(L_grid.begin(), L_grid.end(), L);
    if (it == L_grid.end() || t_index >= t_grid.size()) {
        throw InvalidInput("no scan entry for L = " + std::to_string(L));
    }
    return table[static_cast<std::size_t>(it - L_grid.begin())][t_index];
}

std::vector<double> ScanResult::series(int L, double SEReport::*field) const {
    std::vector<double> out;
    out.reserve(t_grid.size());
    for (std::size_t j = 0; j < t_grid.size(); j++) {
        out.push_back(at(L, j).*field);
    }
    return out;
}

ScanResult time_scan(const QuenchSpec& spec, const std::vector<int>& L_grid, const std::vector<double>& t_grid,
                     const ScanOptions& opts) {
    spec.validate();
    if (L_grid.empty() || t_grid.empty()) {
        throw InvalidInput("empty scan grid");
    }
    for (std::size_t i = 0; i < L_grid.size(); i++) {
        if (L_grid[i] < 1 || (i > 0 && L_grid[i] <= L_grid[i - 1])) {
            throw InvalidInput("L grid must be positive and increasing");
        }
        if (L_grid[i] > opts.moments.max_block_len) {
            throw ResourceError("L = " + std::to_string(L_grid[i]) + " exceeds max_block_len " +
                                std::to_string(opts.moments.max_block_len));
        }
    }
    for (std::size_t j = 0; j < t_grid.size(); j++) {
        if (!(t_grid[j] >= 0) || (j > 0 && t_grid[j] <= t_grid[j - 1])) {
            throw InvalidInput("time grid must be non-negative and increasing");
        }
    }
    if (auto* fc = std::get_if<FiniteChain>(&spec.size); fc != nullptr && L_grid.back() > fc->n_sites) {
        throw DomainError("block longer than the chain");
    }

    ScanResult res;
    res.spec = spec;
    res.L_grid = L_grid;
    res.t_grid = t_grid;
    res.table.resize(L_grid.size());
    if (opts.dephased) {
        res.dephased_row.resize(L_grid.size());
    }
    for (std::size_t i = 0; i < L_grid.size(); i++) {
        const int L = L_grid[i];
        bool resumed = false;
        for (const auto& [cl, rows] : opts.completed) {
            if (cl == L && rows.size() == t_grid.size()) {
                res.table[i] = rows;
                resumed = true;
            }
        }
        if (!resumed) {
            res.table[i].reserve(t_grid.size());
            for (double t : t_grid) {
                res.table[i].push_back(se_report(evolved_correlation(spec, L, t), opts.moments));
            }
        }
        if (opts.dephased) {
            bool have = false;
            for (const auto& [cl, row] : opts.completed_dephased) {
                if (cl == L) {
                    res.dephased_row[i] = row;
                    have = true;
                }
            }
            if (!have) {
                res.dephased_row[i] = se_report(gge_correlation(spec, L), opts.moments);
            }
        }
        if (opts.on_row) {
            opts.on_row(res, i);
        }
    }
    return res;
}

Equilibration equilibration_time(const std::vector<double>& t, const std::vector<double>& series, double ref,
                                 double tol, double horizon) {
    if (t.size() != series.size()) {
        throw InvalidInput("time and series lengths differ");
    }
    if (!(tol > 0)) {
        throw InvalidInput("tolerance must be positive");
    }
    Equilibration eq;
    const double band = std::abs(ref) < 1e-6 ? 1e-3 : tol * std::abs(ref);
    eq.absolute_fallback = std::abs(ref) < 1e-6;
    std::optional<std::size_t> first;
    for (std::size_t j = t.size(); j-- > 0;) {
        if (t[j] > horizon) {
            continue;
        }
        if (std::abs(series[j] - ref) <= band) {
            first = j;
        } else {
            break;
        }
    }
    if (first) {
        eq.status = EquilibrationStatus::Equilibrated;
        eq.time = t[*first];
    }
    return eq;
}

std::vector<double> second_difference(const std::vector<double>& values) {
    std::vector<double> d;
    for (std::size_t i = 1; i + 1 < values.size(); i++) {
        d.push_back(values[i + 1] - 2 * values[i] + values[i - 1]);
    }
    return d;
}

std::optional<int> locality_length(const std::vector<int>& interior_L, const std::vector<double>& abs_d2,
                                   double eps, int min_tail) {
    if (interior_L.size() != abs_d2.size()) {
        throw InvalidInput("profile lengths differ");
    }
    std::size_t start = abs_d2.size();
    while (start > 0 && std::abs(abs_d2[start - 1]) <= eps) {
        start--;
    }
    if (static_cast<int>(abs_d2.size() - start) < min_tail) {
        return std::nullopt;
    }
    return interior_L[start];
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) {
        throw InvalidInput("linear fit needs at least two points");
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; i++) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; i++) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0) {
        throw InvalidInput("degenerate abscissae");
    }
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; i++) {
        double r = y[i] - (f.slope * x[i] + f.intercept);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    f.r2 = syy > 0 ? 1 - ss / syy : 1.0;
    return f;
}

VelocityFit fit_velocity(const std::vector<double>& t, const std::vector<std::optional<int>>& l_eps,
                         int transient_sites, int min_points, double max_rms) {
    if (t.size() != l_eps.size()) {
        throw InvalidInput("time and locality lengths differ");
    }
    VelocityFit fit;
    if (t.empty() || !l_eps.front()) {
        return fit;
    }
    const int l0 = *l_eps.front();
    std::size_t begin = t.size();
    for (std::size_t j = 0; j < t.size(); j++) {
        if (!l_eps[j]) {
            break;
        }
        if (*l_eps[j] >= l0 + transient_sites) {
            begin = j;
            break;
        }
    }
    std::vector<double> x, y;
    for (std::size_t j = begin; j < t.size() && l_eps[j]; j++) {
        if (!y.empty() && *l_eps[j] < y.back()) {
            break;
        }
        x.push_back(t[j]);
        y.push_back(*l_eps[j]);
    }
    fit.points = static_cast<int>(x.size());
    if (fit.points < std::max(2, min_points)) {
        return fit;
    }
    LinearFit lf = linear_fit(x, y);
    fit.slope = lf.slope;
    fit.intercept = lf.intercept;
    fit.rms = lf.rms;
    fit.t_begin = x.front();
    fit.t_end = x.back();
    fit.status = lf.rms < max_rms ? FitStatus::Accepted : FitStatus::PoorFit;
    return fit;
}

SpreadingVelocity spreading_velocity(const VelocityFit& T2, const VelocityFit& T4) {
    SpreadingVelocity sv{T2, T4, std::nullopt};
    for (const VelocityFit* f : {&T2, &T4}) {
        if (f->status == FitStatus::Accepted) {
            sv.v_s = sv.v_s ? std::max(*sv.v_s, f->slope) : f->slope;
        }
    }
    return sv;
}

LocalityProfile locality_profile(const ScanResult& scan, LocalityKind kind, double epsilon) {
    const auto& Lg = scan.L_grid;
    if (Lg.size() < 3) {
        throw InvalidInput("locality profile needs at least three block sizes");
    }
    for (std::size_t i = 1; i < Lg.size(); i++) {
        if (Lg[i] != Lg[i - 1] + 1) {
            throw InvalidInput("locality profile needs consecutive block sizes");
        }
    }
    LocalityProfile p;
    p.kind = kind;
    p.epsilon = epsilon;
    p.t_grid = scan.t_grid;
    p.interior_L.assign(Lg.begin() + 1, Lg.end() - 1);
    double SEReport::*field = kind == LocalityKind::T2 ? &SEReport::T2 : &SEReport::T4;
    for (std::size_t j = 0; j < scan.t_grid.size(); j++) {
        std::vector<double> v;
        for (std::size_t i = 0; i < Lg.size(); i++) {
            v.push_back(scan.table[i][j].*field);
        }
        std::vector<double> d = second_difference(v);
        for (double& x : d) {
            x = std::abs(x);
        }
        p.l_eps.push_back(locality_length(p.interior_L, d, epsilon));
        p.abs_d2.push_back(std::move(d));
    }
    p.fit = fit_velocity(p.t_grid, p.l_eps);
    return p;
}

double extrapolate_M2(double m2_L0, double m2_L0_plus_1, int L0, int L) {
    return (m2_L0_plus_1 - m2_L0) * (L - L0) + m2_L0;
}

}  // namespace sedyn
