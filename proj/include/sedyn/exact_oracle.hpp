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
#include <cstdint>
#include <random>
#include <vector>

#include "sedyn/pauli_wick.hpp"

namespace sedyn::oracle {

/// Site i of the chain is bit i of the basis index; bit value 0 is Z = +1.
constexpr int kMaxSites = 12;

struct DenseState {
    int n_sites = 0;
    Eigen::VectorXcd amplitudes;
};

struct DenseOperator {
    int n_sites = 0;
    Eigen::MatrixXd matrix;
};

/// H = -sum_n (X_n X_{n+1} + lambda Z_n) on the periodic chain, full 2^N space.
DenseOperator build_hamiltonian(int n_sites, double lambda);

/// Lowest state of the even-parity (even number of Z = -1 spins) sector.
DenseState ground_state(int n_sites, double lambda);
double ground_energy(int n_sites, double lambda);

/// exp(-i H(lambda1) t) |psi>, exact via cached eigendecompositions of both parity sectors.
DenseState evolve(const DenseState& psi, double lambda1, double t);

/// <psi|H(lambda)|psi>.
double energy(const DenseState& psi, double lambda);

/// |<a|b>|^2.
double fidelity(const DenseState& a, const DenseState& b);

/// Reduced density matrix of sites 0 .. L-1.
Eigen::MatrixXcd reduced_density(const DenseState& psi, int block_len);

/// Sum_c P_c |psi><psi| P_c over spectral projectors of H(lambda1), stored as the
/// unnormalized components P_c |psi>.
struct DephasedState {
    int n_sites = 0;
    std::vector<Eigen::VectorXcd> components;
    std::vector<double> energies;
    /// Eigenvalue clusters with more than one member (gap below the tolerance).
    int degenerate_clusters = 0;
};

DephasedState dephased_state(int n_sites, double lambda0, double lambda1, double cluster_tol = 1e-9);
Eigen::MatrixXcd reduced_density(const DephasedState& rho, int block_len);

/// Full density matrix; limited to 10 sites.
Eigen::MatrixXcd density_matrix(const DephasedState& rho);

/// tr(P rho) for every Pauli string, indexed x_bits * 2^L + z_bits.
std::vector<double> pauli_spectrum(const Eigen::MatrixXcd& rho);
double pauli_expectation(const Eigen::MatrixXcd& rho, const PauliString& p);

/// Sums of tr(P rho)^2 and tr(P rho)^4 over all 4^L strings.
MomentSums brute_moments(const Eigen::MatrixXcd& rho);

/// Single-qubit and two-qubit Clifford generators.
struct CliffordGate {
    enum Kind : std::uint8_t { H, S, CX } kind;
    int a;
    int b;
};

std::vector<CliffordGate> random_clifford_circuit(int n_qubits, int n_gates, std::mt19937_64& rng);

/// U rho U^dagger.
Eigen::MatrixXcd apply_clifford(const Eigen::MatrixXcd& rho, const std::vector<CliffordGate>& circuit);

/// Majorana correlation matrix of sites 0 .. L-1 measured on a dense state.
Eigen::MatrixXd majorana_correlation(const DenseState& psi, int block_len);

}  // namespace sedyn::oracle
