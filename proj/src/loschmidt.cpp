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

#include "sedyn/loschmidt.hpp"

#include <algorithm>
#include <cmath>

#include "sedyn/errors.hpp"

namespace sedyn {

namespace {

struct ModeFactors {
    std::vector<double> amp;  // sin^2(2 delta_k)
    std::vector<double> eps;  // eps_k(lambda1)
};

ModeFactors mode_factors(const QuenchSpec& spec) {
    spec.validate();
    auto* fc = std::get_if<FiniteChain>(&spec.size);
    if (fc == nullptr) {
        throw DomainError("the echo is defined on finite chains only");
    }
    if (fc->n_sites > kMaxEchoSites) {
        throw ResourceError("echo limited to N <= " + std::to_string(kMaxEchoSites));
    }
    ModeFactors f;
    for (const ModeData& m : mode_table(spec, momentum_grid(spec, 1, 0.0))) {
        double s = std::sin(2 * m.delta);
        f.amp.push_back(s * s);
        f.eps.push_back(m.epsilon1);
    }
    return f;
}

double rate_from(const ModeFactors& f, double t) {
    double r = 0;
    for (std::size_t i = 0; i < f.amp.size(); i++) {
        double s = std::sin(f.eps[i] * t);
        double x = f.amp[i] * s * s;
        if (x >= 1.0) {
            return INFINITY;
        }
        r -= std::log1p(-x);
    }
    return r;
}

double median(std::vector<double> v) {
    if (v.empty()) {
        return NAN;
    }
    std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double hi = v[mid];
    if (v.size() % 2 == 1) {
        return hi;
    }
    double lo = *std::max_element(v.begin(), v.begin() + mid);
    return 0.5 * (lo + hi);
}

// Depth of the local minimum at i: the lower of the two highest points crossed
// before reaching a lower value (or the series edge) on each side, minus r[i].
double dip_prominence(const std::vector<double>& r, std::size_t i) {
    double left = r[i];
    for (std::size_t j = i; j-- > 0;) {
        if (r[j] < r[i]) {
            break;
        }
        left = std::max(left, r[j]);
    }
    double right = r[i];
    for (std::size_t j = i + 1; j < r.size(); j++) {
        if (r[j] < r[i]) {
            break;
        }
        right = std::max(right, r[j]);
    }
    return std::min(left, right) - r[i];
}

}  // namespace

double loschmidt_rate(const QuenchSpec& spec, double t) {
    return rate_from(mode_factors(spec), t);
}

double loschmidt_echo(const QuenchSpec& spec, double t) {
    return std::exp(-loschmidt_rate(spec, t));
}

EchoSeries echo_series(const QuenchSpec& spec, const std::vector<double>& t_grid) {
    ModeFactors f = mode_factors(spec);
    EchoSeries s;
    s.spec = spec;
    s.t = t_grid;
    s.rate.reserve(t_grid.size());
    s.echo.reserve(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); i++) {
        if (i > 0 && !(t_grid[i] > t_grid[i - 1])) {
            throw InvalidInput("time grid must be increasing");
        }
        double r = rate_from(f, t_grid[i]);
        s.rate.push_back(r);
        s.echo.push_back(std::exp(-r));
    }
    return s;
}

std::vector<double> default_echo_grid(int n_sites, double horizon_over_n) {
    const double dt = n_sites / 4000.0;
    const auto steps = static_cast<long>(std::ceil(horizon_over_n * 4000.0));
    std::vector<double> t(steps + 1);
    for (long i = 0; i <= steps; i++) {
        t[i] = i * dt;
    }
    return t;
}

RevivalReport revival_times(EchoSeries& series, const RevivalOptions& opts) {
    auto* fc = std::get_if<FiniteChain>(&series.spec.size);
    if (fc == nullptr) {
        throw DomainError("revival analysis needs a finite chain");
    }
    if (series.rate.size() != series.t.size()) {
        series.rate.clear();
        for (double e : series.echo) {
            series.rate.push_back(e > 0 ? -std::log(e) : INFINITY);
        }
    }
    const auto& t = series.t;
    const auto& r = series.rate;
    const double n = fc->n_sites;
    const double v_guess = 2 * std::max(1.0, series.spec.lambda1);
    const double lo = opts.baseline_lo * n / v_guess;
    const double hi = opts.baseline_hi * n / v_guess;

    RevivalReport rep;
    std::vector<double> window;
    for (std::size_t i = 0; i < t.size(); i++) {
        if (t[i] >= lo && t[i] <= hi && std::isfinite(r[i])) {
            window.push_back(r[i]);
        }
    }
    rep.baseline = median(window);
    if (!std::isfinite(rep.baseline) || rep.baseline <= 0) {
        series.peaks.clear();
        return rep;
    }

    std::vector<RevivalPeak> cand;
    for (std::size_t i = 1; i + 1 < t.size(); i++) {
        if (t[i] < lo) {
            continue;
        }
        if (r[i] < r[i - 1] && r[i] <= r[i + 1]) {
            cand.push_back({t[i], series.echo[i], dip_prominence(r, i)});
        }
    }
    double best = 0;
    for (const auto& c : cand) {
        best = std::max(best, c.prominence);
    }
    const double floor = std::max(opts.min_prominence_vs_baseline * rep.baseline, opts.min_prominence_vs_best * best);
    for (const auto& c : cand) {
        if (c.prominence >= floor && c.prominence > 0) {
            rep.peaks.push_back(c);
        }
    }
    series.peaks = rep.peaks;
    if (!rep.peaks.empty()) {
        rep.status = RevivalStatus::Found;
        rep.t_revival = rep.peaks.front().t;
    }
    return rep;
}

double lr_speed(double t_revival, int n_sites) {
    if (!(t_revival > 0)) {
        throw DomainError("revival time must be positive");
    }
    return n_sites / (2.0 * t_revival);
}

}  // namespace sedyn
