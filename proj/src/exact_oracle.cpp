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

#include "sedyn/exact_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "sedyn/errors.hpp"

namespace sedyn::oracle {

namespace {

using cd = std::complex<double>;

void check_sites(int n) {
    if (n < 2 || n > kMaxSites) {
        throw ResourceError("dense oracle supports 2 <= N <= " + std::to_string(kMaxSites) + ", got " +
                            std::to_string(n));
    }
}

void check_coupling(double lambda) {
    if (!(lambda > 0) || !std::isfinite(lambda)) {
        throw DomainError("coupling must be positive and finite");
    }
}

// Basis states of one parity sector and the sector Hamiltonian's eigensystem.
struct Sector {
    std::vector<std::uint32_t> states;
    Eigen::VectorXd energies;
    Eigen::MatrixXd vectors;
};

Sector solve_sector(int n, double lambda, int parity) {
    Sector s;
    const std::uint32_t dim = std::uint32_t{1} << n;
    std::vector<int> pos(dim, -1);
    for (std::uint32_t k = 0; k < dim; k++) {
        if ((std::popcount(k) & 1) == parity) {
            pos[k] = static_cast<int>(s.states.size());
            s.states.push_back(k);
        }
    }
    const auto m = static_cast<Eigen::Index>(s.states.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index c = 0; c < m; c++) {
        std::uint32_t k = s.states[c];
        double diag = 0;
        for (int i = 0; i < n; i++) {
            diag -= lambda * (((k >> i) & 1) ? -1.0 : 1.0);
            std::uint32_t f = k ^ (std::uint32_t{1} << i) ^ (std::uint32_t{1} << ((i + 1) % n));
            h(pos[f], c) -= 1.0;
        }
        h(c, c) += diag;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    s.energies = es.eigenvalues();
    s.vectors = es.eigenvectors();
    return s;
}

// Eigensystems are reused across times and tests; keyed by (N, lambda, parity).
std::shared_ptr<const Sector> sector(int n, double lambda, int parity) {
    static std::mutex mu;
    static std::map<std::tuple<int, double, int>, std::shared_ptr<const Sector>> cache;
    auto key = std::make_tuple(n, lambda, parity);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) {
            return it->second;
        }
    }
    auto s = std::make_shared<const Sector>(solve_sector(n, lambda, parity));
    std::lock_guard<std::mutex> lock(mu);
    if (cache.size() > 16) {
        cache.clear();
    }
    cache.emplace(key, s);
    return s;
}

Eigen::VectorXcd gather(const Eigen::VectorXcd& full, const Sector& s) {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(s.states.size()));
    for (std::size_t i = 0; i < s.states.size(); i++) {
        out[i] = full[s.states[i]];
    }
    return out;
}

void scatter(const Eigen::VectorXcd& part, const Sector& s, Eigen::VectorXcd& full) {
    for (std::size_t i = 0; i < s.states.size(); i++) {
        full[s.states[i]] = part[i];
    }
}

void walsh_hadamard(std::vector<cd>& v) {
    const std::size_t n = v.size();
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t i = 0; i < n; i += 2 * h) {
            for (std::size_t j = i; j < i + h; j++) {
                cd a = v[j];
                cd b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

int block_dim_log(const Eigen::MatrixXcd& rho) {
    const auto d = rho.rows();
    if (d != rho.cols() || d == 0 || (d & (d - 1)) != 0) {
        throw InvalidInput("density matrix must be square with power-of-two dimension");
    }
    int L = std::countr_zero(static_cast<std::uint64_t>(d));
    if (L > 13) {
        throw ResourceError("dense Pauli spectrum limited to 13 qubits");
    }
    return L;
}

// Apply a single gate to the row index of m (left multiplication).
void apply_left(Eigen::MatrixXcd& m, const CliffordGate& g) {
    const Eigen::Index d = m.rows();
    const std::uint64_t ba = std::uint64_t{1} << g.a;
    switch (g.kind) {
        case CliffordGate::H: {
            const double r = 1.0 / std::sqrt(2.0);
            for (Eigen::Index i = 0; i < d; i++) {
                if (i & ba) {
                    continue;
                }
                Eigen::Index j = i | static_cast<Eigen::Index>(ba);
                Eigen::RowVectorXcd r0 = m.row(i);
                Eigen::RowVectorXcd r1 = m.row(j);
                m.row(i) = r * (r0 + r1);
                m.row(j) = r * (r0 - r1);
            }
            break;
        }
        case CliffordGate::S:
            for (Eigen::Index i = 0; i < d; i++) {
                if (i & ba) {
                    m.row(i) *= cd(0, 1);
                }
            }
            break;
        case CliffordGate::CX: {
            const std::uint64_t bb = std::uint64_t{1} << g.b;
            for (Eigen::Index i = 0; i < d; i++) {
                if ((i & ba) && !(i & bb)) {
                    m.row(i).swap(m.row(i | static_cast<Eigen::Index>(bb)));
                }
            }
            break;
        }
    }
}

}  // namespace

DenseOperator build_hamiltonian(int n_sites, double lambda) {
    check_sites(n_sites);
    if (!(lambda >= 0) || !std::isfinite(lambda)) {
        throw DomainError("coupling must be non-negative and finite");
    }
    const std::uint32_t dim = std::uint32_t{1} << n_sites;
    DenseOperator op;
    op.n_sites = n_sites;
    op.matrix = Eigen::MatrixXd::Zero(dim, dim);
    for (std::uint32_t k = 0; k < dim; k++) {
        for (int i = 0; i < n_sites; i++) {
            op.matrix(k, k) -= lambda * (((k >> i) & 1) ? -1.0 : 1.0);
            std::uint32_t f = k ^ (std::uint32_t{1} << i) ^ (std::uint32_t{1} << ((i + 1) % n_sites));
            op.matrix(f, k) -= 1.0;
        }
    }
    return op;
}

DenseState ground_state(int n_sites, double lambda) {
    check_sites(n_sites);
    check_coupling(lambda);
    auto s = sector(n_sites, lambda, 0);
    DenseState psi;
    psi.n_sites = n_sites;
    psi.amplitudes = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_sites);
    scatter(s->vectors.col(0).cast<cd>(), *s, psi.amplitudes);
    return psi;
}

double ground_energy(int n_sites, double lambda) {
    check_sites(n_sites);
    check_coupling(lambda);
    return sector(n_sites, lambda, 0)->energies[0];
}

DenseState evolve(const DenseState& psi, double lambda1, double t) {
    check_sites(psi.n_sites);
    check_coupling(lambda1);
    DenseState out;
    out.n_sites = psi.n_sites;
    out.amplitudes = Eigen::VectorXcd::Zero(psi.amplitudes.size());
    for (int parity = 0; parity < 2; parity++) {
        // The odd sector is only diagonalized when the state has weight there.
        std::uint32_t dim = std::uint32_t{1} << psi.n_sites;
        double weight = 0;
        for (std::uint32_t k = 0; k < dim; k++) {
            if ((std::popcount(k) & 1) == parity) {
                weight += std::norm(psi.amplitudes[k]);
            }
        }
        if (weight == 0) {
            continue;
        }
        auto s = sector(psi.n_sites, lambda1, parity);
        Eigen::VectorXcd c = s->vectors.transpose().cast<cd>() * gather(psi.amplitudes, *s);
        for (Eigen::Index i = 0; i < c.size(); i++) {
            c[i] *= std::exp(cd(0, -s->energies[i] * t));
        }
        scatter(s->vectors.cast<cd>() * c, *s, out.amplitudes);
    }
    return out;
}

double energy(const DenseState& psi, double lambda) {
    DenseOperator h = build_hamiltonian(psi.n_sites, lambda);
    return (psi.amplitudes.adjoint() * (h.matrix.cast<cd>() * psi.amplitudes))(0).real();
}

double fidelity(const DenseState& a, const DenseState& b) {
    return std::norm(a.amplitudes.dot(b.amplitudes));
}

Eigen::MatrixXcd reduced_density(const DenseState& psi, int block_len) {
    if (block_len < 1 || block_len > psi.n_sites) {
        throw DomainError("block length out of range");
    }
    const Eigen::Index da = Eigen::Index{1} << block_len;
    const Eigen::Index db = Eigen::Index{1} << (psi.n_sites - block_len);
    Eigen::Map<const Eigen::MatrixXcd> m(psi.amplitudes.data(), da, db);
    return m * m.adjoint();
}

DephasedState dephased_state(int n_sites, double lambda0, double lambda1, double cluster_tol) {
    check_sites(n_sites);
    DenseState psi = ground_state(n_sites, lambda0);
    auto s = sector(n_sites, lambda1, 0);
    Eigen::VectorXd coeff = s->vectors.transpose() * gather(psi.amplitudes, *s).real();
    DephasedState out;
    out.n_sites = n_sites;
    const Eigen::Index m = s->energies.size();
    Eigen::Index start = 0;
    while (start < m) {
        Eigen::Index end = start + 1;
        while (end < m && s->energies[end] - s->energies[end - 1] < cluster_tol) {
            end++;
        }
        if (end - start > 1) {
            out.degenerate_clusters++;
        }
        Eigen::VectorXd part = s->vectors.middleCols(start, end - start) * coeff.segment(start, end - start);
        if (part.squaredNorm() > 1e-30) {
            Eigen::VectorXcd full = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_sites);
            scatter(part.cast<cd>(), *s, full);
            out.components.push_back(std::move(full));
            out.energies.push_back(s->energies[start]);
        }
        start = end;
    }
    return out;
}

Eigen::MatrixXcd reduced_density(const DephasedState& rho, int block_len) {
    if (block_len < 1 || block_len > rho.n_sites) {
        throw DomainError("block length out of range");
    }
    const Eigen::Index da = Eigen::Index{1} << block_len;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(da, da);
    for (const auto& c : rho.components) {
        DenseState part{rho.n_sites, c};
        out += reduced_density(part, block_len);
    }
    return out;
}

Eigen::MatrixXcd density_matrix(const DephasedState& rho) {
    if (rho.n_sites > 10) {
        throw ResourceError("full dephased density matrix limited to 10 sites");
    }
    const Eigen::Index d = Eigen::Index{1} << rho.n_sites;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& c : rho.components) {
        out += c * c.adjoint();
    }
    return out;
}

std::vector<double> pauli_spectrum(const Eigen::MatrixXcd& rho) {
    const int L = block_dim_log(rho);
    const std::size_t d = std::size_t{1} << L;
    std::vector<double> out(d * d);
    std::vector<cd> v(d);
    for (std::size_t x = 0; x < d; x++) {
        for (std::size_t j = 0; j < d; j++) {
            v[j] = rho(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j ^ x));
        }
        walsh_hadamard(v);
        for (std::size_t z = 0; z < d; z++) {
            int y = std::popcount(x & z) & 3;
            cd ph = y == 0 ? cd(1, 0) : y == 1 ? cd(0, 1) : y == 2 ? cd(-1, 0) : cd(0, -1);
            out[x * d + z] = (ph * v[z]).real();
        }
    }
    return out;
}

double pauli_expectation(const Eigen::MatrixXcd& rho, const PauliString& p) {
    const int L = block_dim_log(rho);
    if (p.n_sites != L) {
        throw InvalidInput("Pauli string length does not match the density matrix");
    }
    const std::size_t d = std::size_t{1} << L;
    cd acc = 0;
    for (std::size_t j = 0; j < d; j++) {
        double sign = (std::popcount(p.z_bits & j) & 1) ? -1.0 : 1.0;
        acc += sign * rho(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j ^ p.x_bits));
    }
    int y = std::popcount(p.x_bits & p.z_bits) & 3;
    cd ph = y == 0 ? cd(1, 0) : y == 1 ? cd(0, 1) : y == 2 ? cd(-1, 0) : cd(0, -1);
    return (ph * acc).real();
}

MomentSums brute_moments(const Eigen::MatrixXcd& rho) {
    MomentSums m;
    m.block_len = block_dim_log(rho);
    for (double v : pauli_spectrum(rho)) {
        double v2 = v * v;
        m.sum_sq += v2;
        m.sum_quad += v2 * v2;
    }
    m.even_strings = std::uint64_t{1} << (2 * m.block_len);
    return m;
}

std::vector<CliffordGate> random_clifford_circuit(int n_qubits, int n_gates, std::mt19937_64& rng) {
    std::vector<CliffordGate> c;
    std::uniform_int_distribution<int> kind(0, n_qubits > 1 ? 2 : 1);
    std::uniform_int_distribution<int> site(0, n_qubits - 1);
    for (int g = 0; g < n_gates; g++) {
        int k = kind(rng);
        int a = site(rng);
        int b = a;
        if (k == 2) {
            while (b == a) {
                b = site(rng);
            }
        }
        c.push_back({static_cast<CliffordGate::Kind>(k), a, b});
    }
    return c;
}

Eigen::MatrixXcd apply_clifford(const Eigen::MatrixXcd& rho, const std::vector<CliffordGate>& circuit) {
    Eigen::MatrixXcd m = rho;
    for (const auto& g : circuit) {
        apply_left(m, g);
        m.adjointInPlace();
        apply_left(m, g);
        m.adjointInPlace();
    }
    return m;
}

Eigen::MatrixXd majorana_correlation(const DenseState& psi, int block_len) {
    if (block_len < 1 || block_len > psi.n_sites) {
        throw DomainError("block length out of range");
    }
    const Eigen::Index dim = psi.amplitudes.size();
    std::vector<Eigen::VectorXcd> images;
    for (int m = 0; m < 2 * block_len; m++) {
        const int site = m / 2;
        const bool y = m % 2 == 1;
        const std::uint64_t below = (std::uint64_t{1} << site) - 1;
        Eigen::VectorXcd out(dim);
        for (Eigen::Index k = 0; k < dim; k++) {
            std::uint64_t uk = static_cast<std::uint64_t>(k);
            double sign = (std::popcount(uk & below) & 1) ? -1.0 : 1.0;
            cd amp = sign * psi.amplitudes[k];
            if (y) {
                amp *= ((uk >> site) & 1) ? cd(0, -1) : cd(0, 1);
            }
            out[static_cast<Eigen::Index>(uk ^ (std::uint64_t{1} << site))] = amp;
        }
        images.push_back(std::move(out));
    }
    const int n = 2 * block_len;
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            if (a != b) {
                g(a, b) = images[a].dot(images[b]).imag();
            }
        }
    }
    return g;
}

}  // namespace sedyn::oracle
