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

#include "sedyn/replica_tm.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "sedyn/errors.hpp"
#include "sedyn/exact_oracle.hpp"

namespace sedyn {

namespace {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Mat kron_power(const Mat& a, int k) {
    Mat out = a;
    for (int i = 1; i < k; i++) {
        out = kron(out, a);
    }
    return out;
}

std::array<Eigen::Matrix2cd, 4> paulis() {
    Eigen::Matrix2cd i2 = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd x, y, z;
    x << 0, 1, 1, 0;
    y << 0, cd(0, -1), cd(0, 1), 0;
    z << 1, 0, 0, -1;
    return {i2, x, y, z};
}

void check_mps(const UniformMps& mps) {
    const auto d = mps.a[0].rows();
    if (d < 1 || mps.a[0].cols() != d || mps.a[1].rows() != d || mps.a[1].cols() != d) {
        throw InvalidInput("MPS tensors must be square and of equal size");
    }
}

struct LeadingProjector {
    Mat p;
    cd mu;
    int rank = 0;
};

// Spectral projector of t on the eigenvalues coinciding with its dominant one.
LeadingProjector leading_projector(const Mat& t) {
    Eigen::ComplexEigenSolver<Mat> es(t);
    if (es.info() != Eigen::Success) {
        throw InvalidInput("eigendecomposition of the transfer matrix failed");
    }
    const auto& ev = es.eigenvalues();
    Eigen::Index top = 0;
    for (Eigen::Index i = 1; i < ev.size(); i++) {
        if (std::abs(ev[i]) > std::abs(ev[top])) {
            top = i;
        }
    }
    const cd mu = ev[top];
    const Mat& v = es.eigenvectors();
    Mat vinv = v.partialPivLu().inverse();
    LeadingProjector lp;
    lp.mu = mu;
    lp.p = Mat::Zero(t.rows(), t.cols());
    for (Eigen::Index i = 0; i < ev.size(); i++) {
        if (std::abs(ev[i] - mu) <= 1e-8 * std::abs(mu)) {
            lp.p += v.col(i) * vinv.row(i);
            lp.rank++;
        }
    }
    return lp;
}

}  // namespace

UniformMps normalize(UniformMps mps) {
    check_mps(mps);
    Mat e = single_transfer(mps, Eigen::Matrix2cd::Identity());
    Eigen::ComplexEigenSolver<Mat> es(e, false);
    double top = es.eigenvalues().cwiseAbs().maxCoeff();
    if (!(top > 0)) {
        throw InvalidInput("MPS has a vanishing transfer matrix");
    }
    const double s = 1.0 / std::sqrt(top);
    mps.a[0] *= s;
    mps.a[1] *= s;
    mps.normalized = true;
    return mps;
}

UniformMps random_mps(int bond_dim, std::mt19937_64& rng) {
    if (bond_dim < 1) {
        throw DomainError("bond dimension must be positive");
    }
    std::normal_distribution<double> g(0.0, 1.0);
    UniformMps m;
    for (auto& a : m.a) {
        a.resize(bond_dim, bond_dim);
        for (Eigen::Index i = 0; i < a.size(); i++) {
            a.data()[i] = cd(g(rng), g(rng));
        }
    }
    return normalize(m);
}

UniformMps product_mps(cd c0, cd c1) {
    UniformMps m;
    m.a[0] = Mat::Constant(1, 1, c0);
    m.a[1] = Mat::Constant(1, 1, c1);
    return normalize(m);
}

UniformMps cat_mps() {
    const double r = 1.0 / std::sqrt(2.0);
    UniformMps m;
    m.a[0] = Mat::Zero(2, 2);
    m.a[1] = Mat::Zero(2, 2);
    m.a[0].diagonal() << r, r;
    m.a[1].diagonal() << r, -r;
    return normalize(m);
}

Mat single_transfer(const UniformMps& mps, const Eigen::Matrix2cd& op) {
    check_mps(mps);
    const auto d = mps.a[0].rows();
    Mat out = Mat::Zero(d * d, d * d);
    for (int s = 0; s < 2; s++) {
        for (int sp = 0; sp < 2; sp++) {
            if (op(s, sp) != cd(0, 0)) {
                out += op(s, sp) * kron(mps.a[s].conjugate(), mps.a[sp]);
            }
        }
    }
    return out;
}

Mat replica_transfer(const UniformMps& mps, int k, bool dressed) {
    check_mps(mps);
    if (k < 1) {
        throw DomainError("replica index must be positive");
    }
    const double dim = std::pow(static_cast<double>(mps.bond_dim()), 4.0 * k);
    if (dim > kMaxReplicaTransferDim) {
        throw ResourceError("replica transfer dimension " + std::to_string(static_cast<long>(dim)) +
                            " exceeds " + std::to_string(kMaxReplicaTransferDim));
    }
    const auto ps = paulis();
    const int n_ops = dressed ? 4 : 1;
    Mat out;
    for (int p = 0; p < n_ops; p++) {
        Mat e = single_transfer(mps, ps[p]);
        Mat pair = kron(e, e.conjugate());
        Mat term = kron_power(pair, k);
        if (p == 0) {
            out = term;
        } else {
            out += term;
        }
    }
    return out;
}

ReplicaScaling scaling_params(const Mat& tau, const Mat& tau_A, int k) {
    if (tau.rows() != tau.cols() || tau_A.rows() != tau.rows() || tau_A.cols() != tau.cols()) {
        throw InvalidInput("transfer matrices must be square and of equal size");
    }
    ReplicaScaling s;
    s.k = k;
    s.transfer_dim = static_cast<int>(tau.rows());
    LeadingProjector lp = leading_projector(tau);
    s.leading_multiplicity = lp.rank;

    Eigen::ComplexEigenSolver<Mat> es(tau_A);
    if (es.info() != Eigen::Success) {
        throw InvalidInput("eigendecomposition of the dressed transfer matrix failed");
    }
    const Mat& v = es.eigenvectors();
    Mat overlap = v.partialPivLu().solve(lp.p * v);
    std::vector<EigenTerm> raw;
    for (Eigen::Index i = 0; i < v.cols(); i++) {
        raw.push_back({es.eigenvalues()[i] / lp.mu, overlap(i, i) / static_cast<double>(lp.rank)});
    }
    std::sort(raw.begin(), raw.end(), [](const EigenTerm& a, const EigenTerm& b) {
        return std::abs(a.mu) > std::abs(b.mu);
    });
    const double scale = std::abs(raw.front().mu);
    std::vector<EigenTerm> merged;
    for (const auto& t : raw) {
        bool joined = false;
        for (auto& m : merged) {
            if (std::abs(m.mu - t.mu) <= 1e-9 * scale) {
                m.coeff += t.coeff;
                joined = true;
                break;
            }
        }
        if (!joined) {
            merged.push_back(t);
        }
    }
    double cmax = 0;
    for (const auto& m : merged) {
        cmax = std::max(cmax, std::abs(m.coeff));
    }
    std::stable_sort(merged.begin(), merged.end(), [&](const EigenTerm& a, const EigenTerm& b) {
        double ma = std::abs(a.mu);
        double mb = std::abs(b.mu);
        if (std::abs(ma - mb) > 1e-10 * scale) {
            return ma > mb;
        }
        return std::abs(a.coeff) > std::abs(b.coeff);
    });
    bool leading = true;
    for (const auto& m : merged) {
        if (std::abs(m.coeff) <= 1e-12 * cmax) {
            if (leading) {
                s.shifted++;
            }
            continue;
        }
        leading = false;
        s.terms.push_back(m);
    }
    if (s.terms.empty()) {
        throw InvalidInput("string expectation vanishes identically");
    }
    const EigenTerm& t1 = s.terms[0];
    s.m = std::log2(std::abs(t1.mu));
    s.q = std::log2(std::abs(t1.coeff));
    if (s.terms.size() == 1) {
        s.xi = std::numeric_limits<double>::infinity();
        s.F = 0;
        return s;
    }
    const EigenTerm& t2 = s.terms[1];
    double ratio = std::abs(t2.mu) / std::abs(t1.mu);
    s.F = std::abs(t2.coeff) / std::abs(t1.coeff);
    for (std::size_t i = 1; i < s.terms.size(); i++) {
        s.F_envelope = std::max(s.F_envelope, std::abs(s.terms[i].coeff) / std::abs(t1.coeff));
    }
    if (ratio >= 1 - 1e-10) {
        s.degenerate = true;
        s.xi = std::numeric_limits<double>::infinity();
    } else {
        s.xi = -1.0 / std::log(ratio);
    }
    return s;
}

ReplicaScaling scaling_params(const UniformMps& mps, int k) {
    return scaling_params(replica_transfer(mps, k, false), replica_transfer(mps, k, true), k);
}

double expansion_value(const ReplicaScaling& s, int L) {
    cd acc = 0;
    for (const auto& t : s.terms) {
        acc += t.coeff * std::pow(t.mu, L);
    }
    return acc.real();
}

double string_expectation(const Mat& tau, const Mat& tau_A, int L) {
    if (L < 0) {
        throw DomainError("string length must be non-negative");
    }
    LeadingProjector lp = leading_projector(tau);
    Mat acc = lp.p;
    const Mat step = tau_A / lp.mu;
    for (int i = 0; i < L; i++) {
        acc = acc * step;
    }
    return (acc.trace() / static_cast<double>(lp.rank)).real();
}

TPrediction predict_T(const ReplicaScaling& s, int L) {
    if (L < 2) {
        throw DomainError("prediction needs L >= 2");
    }
    TPrediction p;
    p.value = -(s.m * L + s.q);
    p.degenerate = s.degenerate;
    double rel = 0;
    if (s.terms.size() > 1) {
        double decay = std::isfinite(s.xi) ? std::exp(-L / s.xi) : 1.0;
        rel = s.transfer_dim * decay * s.F;
    }
    p.error_bound = std::log2(1 + rel);
    p.low_confidence = p.error_bound > 0.5;
    return p;
}

Mat mps_reduced_density(const UniformMps& mps, int L) {
    check_mps(mps);
    if (L < 1 || L > 12) {
        throw ResourceError("dense MPS reduced density limited to 1 <= L <= 12");
    }
    LeadingProjector lp = leading_projector(single_transfer(mps, Eigen::Matrix2cd::Identity()));
    const auto d2 = mps.a[0].rows() * mps.a[0].rows();
    // e[ket][bra] = conj(A^bra) (x) A^ket
    std::array<std::array<Mat, 2>, 2> e;
    for (int s = 0; s < 2; s++) {
        for (int sp = 0; sp < 2; sp++) {
            e[s][sp] = kron(mps.a[sp].conjugate(), mps.a[s]) / lp.mu;
        }
    }
    const Eigen::Index dim = Eigen::Index{1} << L;
    Mat rho = Mat::Zero(dim, dim);
    Mat ptr = lp.p.transpose() / static_cast<double>(lp.rank);
    std::vector<Mat> stack(L + 1, Mat::Identity(d2, d2));
    // Depth-first over (ket, bra) bit pairs, site i on bit i.
    std::vector<int> choice(L, 0);
    int depth = 0;
    Eigen::Index ket = 0;
    Eigen::Index bra = 0;
    while (true) {
        if (depth == L) {
            rho(ket, bra) = ptr.cwiseProduct(stack[L]).sum();
            depth--;
            while (depth >= 0 && choice[depth] == 3) {
                ket &= ~(Eigen::Index{1} << depth);
                bra &= ~(Eigen::Index{1} << depth);
                choice[depth] = 0;
                depth--;
            }
            if (depth < 0) {
                break;
            }
            choice[depth]++;
        }
        const int c = choice[depth];
        const int s = c & 1;
        const int sp = c >> 1;
        ket = (ket & ~(Eigen::Index{1} << depth)) | (Eigen::Index{s} << depth);
        bra = (bra & ~(Eigen::Index{1} << depth)) | (Eigen::Index{sp} << depth);
        stack[depth + 1] = stack[depth] * e[s][sp];
        depth++;
    }
    return rho;
}

double dense_string_expectation(const UniformMps& mps, int k, int L) {
    Mat rho = mps_reduced_density(mps, L);
    double acc = 0;
    for (double v : oracle::pauli_spectrum(rho)) {
        acc += std::pow(v * v, k);
    }
    return acc;
}

}  // namespace sedyn
