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

#include "sedyn/fermion_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sedyn/errors.hpp"
#include "sedyn/kernels/kernels.hpp"

namespace sedyn {

namespace {

constexpr double kPi = std::numbers::pi;

void check_coupling(double lambda, const char* name) {
    if (!(lambda > 0) || !std::isfinite(lambda)) {
        std::ostringstream ss;
        ss << name << " must be positive and finite, got " << lambda;
        throw DomainError(ss.str());
    }
}

void check_momentum(double k) {
    if (!(k >= 0 && k <= kPi)) {
        std::ostringstream ss;
        ss << "momentum must lie in [0, pi], got " << k;
        throw DomainError(ss.str());
    }
}

// Cell functions of the block-Toeplitz correlation matrix, for offsets
// r = -(L-1) .. L-1 stored at index r + L - 1.
struct CellFunctions {
    std::vector<double> xx;
    std::vector<double> xy;
};

// Per-mode coefficients of g_xy(r) = sum_k a_k cos(kr) + b_k sin(kr) and
// g_xx(r) = sum_k c_k sin(kr).
CellFunctions cell_functions(const std::vector<double>& ks, const std::vector<double>& a,
                             const std::vector<double>& b, const std::vector<double>& c, int block_len) {
    const auto& kt = kernels::active_kernels();
    const std::size_t n = ks.size();
    CellFunctions out;
    out.xx.assign(2 * block_len - 1, 0.0);
    out.xy.assign(2 * block_len - 1, 0.0);
    std::vector<double> cs(n);
    std::vector<double> sn(n);
    for (int r = 0; r < block_len; r++) {
        for (std::size_t i = 0; i < n; i++) {
            cs[i] = std::cos(ks[i] * r);
            sn[i] = std::sin(ks[i] * r);
        }
        double ca = kt.dot(a.data(), cs.data(), n);
        double sb = kt.dot(b.data(), sn.data(), n);
        double sc = kt.dot(c.data(), sn.data(), n);
        out.xy[block_len - 1 + r] = ca + sb;
        out.xy[block_len - 1 - r] = ca - sb;
        out.xx[block_len - 1 + r] = sc;
        out.xx[block_len - 1 - r] = -sc;
    }
    return out;
}

Eigen::MatrixXd assemble(const CellFunctions& f, int block_len) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * block_len, 2 * block_len);
    for (int n = 0; n < block_len; n++) {
        for (int m = 0; m < block_len; m++) {
            int r = m - n;
            int o = block_len - 1;
            g(2 * n, 2 * m) = f.xx[o + r];
            g(2 * n + 1, 2 * m + 1) = -f.xx[o + r];
            g(2 * n, 2 * m + 1) = f.xy[o + r];
            g(2 * n + 1, 2 * m) = -f.xy[o - r];
        }
    }
    return g;
}

void check_block(const QuenchSpec& spec, int block_len) {
    if (block_len < 1) {
        throw DomainError("block length must be at least 1");
    }
    if (auto* fc = std::get_if<FiniteChain>(&spec.size)) {
        if (block_len > fc->n_sites) {
            throw DomainError("block length exceeds chain length");
        }
    }
}

// dephased == true drops the oscillating terms (time average).
MajoranaCorrelation build(const QuenchSpec& spec, int block_len, std::optional<double> t) {
    spec.validate();
    check_block(spec, block_len);
    MomentumGrid grid = momentum_grid(spec, block_len, t);
    const std::size_t n = grid.k.size();
    std::vector<double> a(n), b(n), c(n);
    for (std::size_t i = 0; i < n; i++) {
        double k = grid.k[i];
        double th0 = bogoliubov_angle(k, spec.lambda0);
        double th1 = bogoliubov_angle(k, spec.lambda1);
        double cc, ss, osc;
        if (t) {
            double phase = dispersion(k, spec.lambda1) * *t;
            cc = std::cos(phase) * std::cos(phase);
            ss = std::sin(phase) * std::sin(phase);
            osc = std::sin(2 * phase);
        } else {
            cc = 0.5;
            ss = 0.5;
            osc = 0.0;
        }
        double w = grid.weight;
        double mix = 4 * th1 - 2 * th0;
        a[i] = w * (cc * std::cos(2 * th0) + ss * std::cos(mix));
        b[i] = w * (cc * std::sin(2 * th0) + ss * std::sin(mix));
        c[i] = w * osc * std::sin(2 * (th0 - th1));
    }
    CellFunctions f = cell_functions(grid.k, a, b, c, block_len);
    return MajoranaCorrelation(assemble(f, block_len), t);
}

}  // namespace

QuenchSpec QuenchSpec::finite(double lambda0, double lambda1, int n_sites) {
    QuenchSpec s;
    s.lambda0 = lambda0;
    s.lambda1 = lambda1;
    s.size = FiniteChain{n_sites};
    return s;
}

QuenchSpec QuenchSpec::thermodynamic(double lambda0, double lambda1, int quadrature_points) {
    QuenchSpec s;
    s.lambda0 = lambda0;
    s.lambda1 = lambda1;
    ThermodynamicLimit tl;
    tl.quadrature_points = quadrature_points;
    s.size = tl;
    return s;
}

void QuenchSpec::validate() const {
    check_coupling(lambda0, "lambda0");
    check_coupling(lambda1, "lambda1");
    if (auto* fc = std::get_if<FiniteChain>(&size)) {
        if (fc->n_sites < 2 || fc->n_sites % 2 != 0) {
            throw DomainError("finite chain length must be even and at least 2, got " +
                              std::to_string(fc->n_sites));
        }
    } else {
        const auto& tl = std::get<ThermodynamicLimit>(size);
        if (tl.quadrature_points < 64) {
            throw DomainError("quadrature_points must be at least 64, got " +
                              std::to_string(tl.quadrature_points));
        }
        if (!(tl.safety > 0)) {
            throw DomainError("quadrature safety factor must be positive");
        }
    }
}

std::string QuenchSpec::describe() const {
    std::ostringstream ss;
    ss << "lambda " << lambda0 << " -> " << lambda1;
    if (auto* fc = std::get_if<FiniteChain>(&size)) {
        ss << ", N=" << fc->n_sites;
    } else {
        ss << ", N=inf (" << std::get<ThermodynamicLimit>(size).quadrature_points << " nodes)";
    }
    return ss.str();
}

double dispersion(double k, double lambda) {
    check_momentum(k);
    check_coupling(lambda, "lambda");
    double v = 1 + lambda * lambda - 2 * lambda * std::cos(k);
    return 2 * std::sqrt(std::max(v, 0.0));
}

double bogoliubov_angle(double k, double lambda) {
    check_momentum(k);
    check_coupling(lambda, "lambda");
    return 0.5 * std::atan2(std::sin(k), lambda - std::cos(k));
}

double quench_angle(double k, double lambda0, double lambda1) {
    return bogoliubov_angle(k, lambda0) - bogoliubov_angle(k, lambda1);
}

double max_group_velocity(double lambda1) {
    check_coupling(lambda1, "lambda1");
    return 2 * std::min(lambda1, 1.0);
}

MomentumGrid momentum_grid(const QuenchSpec& spec, int block_len, std::optional<double> t) {
    MomentumGrid g;
    if (auto* fc = std::get_if<FiniteChain>(&spec.size)) {
        int n = fc->n_sites;
        g.k.resize(n / 2);
        for (int m = 1; m <= n / 2; m++) {
            g.k[m - 1] = (2 * m - 1) * kPi / n;
        }
        g.weight = 2.0 / n;
        return g;
    }
    const auto& tl = std::get<ThermodynamicLimit>(spec.size);
    long nodes = tl.quadrature_points;
    if (t) {
        if (*t < 0) {
            throw DomainError("time must be non-negative");
        }
        double eps_max = 2 * (1 + spec.lambda1);
        double need = std::ceil(tl.safety * (1 + eps_max * *t)) + block_len;
        if (need > 1e8) {
            throw ResolutionError("time too large for the quadrature");
        }
        if (need > nodes) {
            if (!tl.adaptive) {
                std::ostringstream ss;
                ss << "quadrature with " << nodes << " nodes cannot resolve t=" << *t << " (needs "
                   << static_cast<long>(need) << ")";
                throw ResolutionError(ss.str());
            }
            nodes = static_cast<long>(need);
        }
    }
    g.k.resize(nodes);
    for (long j = 0; j < nodes; j++) {
        g.k[j] = (j + 0.5) * kPi / nodes;
    }
    g.weight = 1.0 / nodes;
    return g;
}

std::vector<ModeData> mode_table(const QuenchSpec& spec, const MomentumGrid& grid) {
    std::vector<ModeData> out;
    out.reserve(grid.k.size());
    for (double k : grid.k) {
        ModeData d;
        d.k = k;
        d.epsilon0 = dispersion(k, spec.lambda0);
        d.epsilon1 = dispersion(k, spec.lambda1);
        d.theta0 = bogoliubov_angle(k, spec.lambda0);
        d.theta1 = bogoliubov_angle(k, spec.lambda1);
        d.delta = d.theta0 - d.theta1;
        out.push_back(d);
    }
    return out;
}

MajoranaCorrelation::MajoranaCorrelation(Eigen::MatrixXd gamma, std::optional<double> time)
    : gamma_(std::move(gamma)), time_(time) {
    if (gamma_.rows() != gamma_.cols() || gamma_.rows() % 2 != 0) {
        throw InvalidInput("correlation matrix must be square with even dimension");
    }
    if (time_ && !(*time_ >= 0)) {
        throw DomainError("time tag must be non-negative");
    }
    if (gamma_.size() == 0) {
        return;
    }
    double asym = (gamma_ + gamma_.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) {
        throw InvalidInput("correlation matrix is not antisymmetric (deviation " + std::to_string(asym) + ")");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gamma_.transpose() * gamma_, Eigen::EigenvaluesOnly);
    double top = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
    if (top > 1 + 1e-10) {
        throw InvalidInput("correlation matrix violates the spectral bound (norm " + std::to_string(top) + ")");
    }
}

MajoranaCorrelation MajoranaCorrelation::leading_block(int block_len) const {
    if (block_len < 0 || block_len > this->block_len()) {
        throw DomainError("sub-block length out of range");
    }
    return MajoranaCorrelation(gamma_.topLeftCorner(2 * block_len, 2 * block_len), time_);
}

MajoranaCorrelation MajoranaCorrelation::direct_sum(const MajoranaCorrelation& a, const MajoranaCorrelation& b) {
    const auto na = a.gamma_.rows();
    const auto nb = b.gamma_.rows();
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(na + nb, na + nb);
    g.topLeftCorner(na, na) = a.gamma_;
    g.bottomRightCorner(nb, nb) = b.gamma_;
    std::optional<double> tag = a.time_ == b.time_ ? a.time_ : std::nullopt;
    return MajoranaCorrelation(std::move(g), tag);
}

std::vector<double> MajoranaCorrelation::symplectic_spectrum() const {
    std::vector<double> out;
    if (gamma_.size() == 0) {
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gamma_.transpose() * gamma_, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); i += 2) {
        out.push_back(std::sqrt(std::max(0.0, 0.5 * (ev[i] + ev[i + 1]))));
    }
    return out;
}

MajoranaCorrelation evolved_correlation(const QuenchSpec& spec, int block_len, double t) {
    if (!(t >= 0) || !std::isfinite(t)) {
        throw DomainError("time must be non-negative and finite");
    }
    return build(spec, block_len, t);
}

MajoranaCorrelation gge_correlation(const QuenchSpec& spec, int block_len) {
    return build(spec, block_len, std::nullopt);
}

MajoranaCorrelation ground_correlation(double lambda, const ChainSize& size, int block_len) {
    QuenchSpec s;
    s.lambda0 = lambda;
    s.lambda1 = lambda;
    s.size = size;
    return build(s, block_len, 0.0);
}

double finite_chain_ground_energy(int n_sites, double lambda) {
    QuenchSpec s = QuenchSpec::finite(lambda, lambda, n_sites);
    s.validate();
    double e = 0;
    for (double k : momentum_grid(s, 1, 0.0).k) {
        e -= dispersion(k, lambda);
    }
    return e;
}

}  // namespace sedyn
