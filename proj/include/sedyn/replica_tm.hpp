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
#include <array>
#include <complex>
#include <random>
#include <vector>

namespace sedyn {

constexpr int kMaxReplicaTransferDim = 4096;

/// Translation-invariant MPS with physical dimension 2: site tensors A^0, A^1 (D x D).
struct UniformMps {
    std::array<Eigen::MatrixXcd, 2> a;
    bool normalized = false;

    int bond_dim() const { return static_cast<int>(a[0].rows()); }
};

/// Rescales the tensors so the leading eigenvalue of the bare transfer matrix
/// sum_s conj(A^s) (x) A^s has modulus 1.
UniformMps normalize(UniformMps mps);

/// Complex Gaussian tensors, normalized.
UniformMps random_mps(int bond_dim, std::mt19937_64& rng);

/// Product state c0|0> + c1|1> on every site (D = 1), normalized.
UniformMps product_mps(std::complex<double> c0, std::complex<double> c1);

/// (|+ + ... +> + |- - ... ->)/sqrt(2): ground state of -sum X_n X_{n+1} as the field vanishes (D = 2).
UniformMps cat_mps();

/// Transfer matrix of the single-copy MPS contracted with the one-site operator op:
/// sum_{s,s'} op(s, s') conj(A^s) (x) A^{s'}.
Eigen::MatrixXcd single_transfer(const UniformMps& mps, const Eigen::Matrix2cd& op);

/// Transfer matrix of (psi (x) psi*)^{(x)k}; dressed inserts
/// 1 + sum_{P = X,Y,Z} (P (x) P*)^{(x)k} on each site. Dimension D^{4k}.
Eigen::MatrixXcd replica_transfer(const UniformMps& mps, int k, bool dressed);

/// One term mu^L * coeff of the eigen-expansion of the string expectation.
struct EigenTerm {
    std::complex<double> mu;
    std::complex<double> coeff;
};

/// Linear-plus-exponential description of log2 of the string expectation:
/// string(L) = 2^{m L + q} (1 + err), err collecting the subleading terms.
struct ReplicaScaling {
    int k = 1;
    int transfer_dim = 0;  // D^{4k}
    double m = 0;
    double q = 0;
    double xi = 0;  // +inf when a single term survives or the leading pair is degenerate
    /// |c_2 / c_1|: overlap of the first surviving subleading term relative to the leading one.
    double F = 0;
    /// max_{i >= 2} |c_i / c_1|; with it dim * e^{-L/xi} * F_envelope bounds |err| for every L.
    double F_envelope = 0;
    /// |mu_1| == |mu_2| within 1e-10 with distinct eigenvalues.
    bool degenerate = false;
    /// Leading eigenpairs skipped for vanishing overlap.
    int shifted = 0;
    /// Degeneracy of the leading eigenvalue of the undressed transfer matrix.
    int leading_multiplicity = 1;
    /// Coincident eigenvalues merged, ordered by |mu| then |coeff|, zero overlaps dropped.
    std::vector<EigenTerm> terms;
};

/// Eigen-expansion of tr(P tau_A^L) / g where P is the spectral projector of tau
/// on its leading eigenvalue and g its rank.
ReplicaScaling scaling_params(const Eigen::MatrixXcd& tau, const Eigen::MatrixXcd& tau_A, int k);
ReplicaScaling scaling_params(const UniformMps& mps, int k);

/// Sum of the eigen-expansion terms.
double expansion_value(const ReplicaScaling& s, int L);

/// tr(P tau_A^L) / g by explicit matrix powers.
double string_expectation(const Eigen::MatrixXcd& tau, const Eigen::MatrixXcd& tau_A, int L);

struct TPrediction {
    /// -(m L + q): the predicted T_2 (k = 1) or T_4 (k = 2).
    double value = 0;
    /// log2(1 + dim e^{-L/xi} F).
    double error_bound = 0;
    bool low_confidence = false;
    bool degenerate = false;
};

TPrediction predict_T(const ReplicaScaling& s, int L);

/// Reduced density matrix of L consecutive sites of the infinite chain (L <= 12).
Eigen::MatrixXcd mps_reduced_density(const UniformMps& mps, int L);

/// Sum_P <P>^{2k} over the L-site Pauli group, from the dense reduced density matrix.
double dense_string_expectation(const UniformMps& mps, int k, int L);

}  // namespace sedyn
