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

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sedyn {

/// Periodic spin chain of N sites, even-parity sector (antiperiodic fermion momenta).
struct FiniteChain {
    int n_sites = 0;
};

/// N -> infinity. Momentum integrals are evaluated with a periodic midpoint rule
/// on [0, pi]; `quadrature_points` is the floor on the number of nodes.
///
/// When `adaptive` is set the node count is raised to
/// ceil(safety * (1 + eps_max * t)) + L whenever that exceeds the floor;
/// otherwise a too-small floor raises ResolutionError.
struct ThermodynamicLimit {
    int quadrature_points = 2048;
    double safety = 4.0;
    bool adaptive = true;
};

using ChainSize = std::variant<FiniteChain, ThermodynamicLimit>;

/// Ground state of H(lambda0) evolved with H(lambda1), H(l) = -sum_n (X_n X_{n+1} + l Z_n).
/// Couplings in units of the Ising exchange; time in units of its inverse.
struct QuenchSpec {
    double lambda0 = 1e4;
    double lambda1 = 0.5;
    ChainSize size = ThermodynamicLimit{};

    static QuenchSpec finite(double lambda0, double lambda1, int n_sites);
    static QuenchSpec thermodynamic(double lambda0, double lambda1, int quadrature_points = 2048);

    bool is_finite() const { return std::holds_alternative<FiniteChain>(size); }

    /// Throws DomainError if any invariant is violated.
    void validate() const;

    std::string describe() const;
};

/// Single positive momentum of the quench.
struct ModeData {
    double k;
    double epsilon0;
    double epsilon1;
    double theta0;
    double theta1;
    double delta;  // theta0 - theta1
};

/// eps_k(lambda) = 2 sqrt(1 + lambda^2 - 2 lambda cos k). Requires k in [0, pi], lambda > 0.
double dispersion(double k, double lambda);

/// Bogoliubov angle with tan(2 theta) = sin k / (lambda - cos k), theta in [0, pi/2].
double bogoliubov_angle(double k, double lambda);

/// theta_k(lambda0) - theta_k(lambda1).
double quench_angle(double k, double lambda0, double lambda1);

/// max_k d eps_k / dk = 2 min(lambda1, 1).
double max_group_velocity(double lambda1);

/// Positive momenta used by `spec` for a block of length L at time t, with the
/// quadrature weight that turns (1/N) sum_k over +-k pairs into a sum over k > 0.
struct MomentumGrid {
    std::vector<double> k;
    double weight = 0;
};
MomentumGrid momentum_grid(const QuenchSpec& spec, int block_len, std::optional<double> t);

std::vector<ModeData> mode_table(const QuenchSpec& spec, const MomentumGrid& grid);

/// Majorana two-point function of a contiguous block:
/// <a_m a_n> = delta_mn + i * gamma(m, n), with a_{2j} = (prod_{i<j} Z_i) X_j and
/// a_{2j+1} = (prod_{i<j} Z_i) Y_j (0-based).
class MajoranaCorrelation {
   public:
    /// Validates antisymmetry (1e-12) and the spectral bound |eig(i gamma)| <= 1 + 1e-10.
    MajoranaCorrelation(Eigen::MatrixXd gamma, std::optional<double> time);

    int block_len() const { return static_cast<int>(gamma_.rows() / 2); }
    const Eigen::MatrixXd& gamma() const { return gamma_; }
    double operator()(int m, int n) const { return gamma_(m, n); }

    /// nullopt marks the dephased (infinite-time averaged) state.
    std::optional<double> time() const { return time_; }
    bool dephased() const { return !time_.has_value(); }

    /// Leading L-site sub-block.
    MajoranaCorrelation leading_block(int block_len) const;

    /// Correlations of the product of two decoupled blocks.
    static MajoranaCorrelation direct_sum(const MajoranaCorrelation& a, const MajoranaCorrelation& b);

    /// Moduli nu_j of the eigenvalues +-i nu_j of gamma, ascending, one per pair.
    std::vector<double> symplectic_spectrum() const;

   private:
    Eigen::MatrixXd gamma_;
    std::optional<double> time_;
};

/// Block correlations of exp(-i H(lambda1) t) |gs(lambda0)>.
MajoranaCorrelation evolved_correlation(const QuenchSpec& spec, int block_len, double t);

/// Block correlations of the state dephased in the eigenbasis of H(lambda1);
/// post-quench mode occupations are sin^2(delta_k).
MajoranaCorrelation gge_correlation(const QuenchSpec& spec, int block_len);

/// Ground-state correlations of H(lambda) (a quench with lambda1 = lambda0 at t = 0).
MajoranaCorrelation ground_correlation(double lambda, const ChainSize& size, int block_len);

/// Even-sector ground energy of the periodic chain: -sum_{k>0} eps_k(lambda).
double finite_chain_ground_energy(int n_sites, double lambda);

}  // namespace sedyn
