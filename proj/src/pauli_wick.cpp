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

#include "sedyn/pauli_wick.hpp"

#include <bit>
#include <cmath>
#include <utility>

#include "sedyn/errors.hpp"
#include "sedyn/kernels/kernels.hpp"

namespace sedyn {

namespace {

// Product of Majorana words (i^pa * a_A) (i^pb * a_B) with sorted index sets.
void multiply_word(std::uint32_t& mask, int& phase, std::uint32_t other, int other_phase) {
    int swaps = 0;
    for (std::uint32_t b = other; b != 0; b &= b - 1) {
        int j = std::countr_zero(b);
        swaps += std::popcount(static_cast<std::uint32_t>(static_cast<std::uint64_t>(mask) >> (j + 1)));
    }
    mask ^= other;
    phase = (phase + other_phase + 2 * (swaps & 1)) & 3;
}

std::uint32_t low_bits(int count) {
    return count >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << count) - 1;
}

}  // namespace

PauliString PauliString::parse(std::string_view text) {
    if (text.size() > 16) {
        throw InvalidInput("Pauli strings are limited to 16 sites");
    }
    PauliString p;
    p.n_sites = static_cast<int>(text.size());
    for (std::size_t i = 0; i < text.size(); i++) {
        std::uint32_t bit = std::uint32_t{1} << i;
        switch (text[i]) {
            case 'I':
            case '_':
                break;
            case 'X':
                p.x_bits |= bit;
                break;
            case 'Y':
                p.x_bits |= bit;
                p.z_bits |= bit;
                break;
            case 'Z':
                p.z_bits |= bit;
                break;
            default:
                throw InvalidInput(std::string("bad Pauli character '") + text[i] + "'");
        }
    }
    return p;
}

std::string PauliString::str() const {
    std::string s;
    for (int i = 0; i < n_sites; i++) {
        bool x = (x_bits >> i) & 1;
        bool z = (z_bits >> i) & 1;
        s.push_back(x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I'));
    }
    return s;
}

MajoranaMonomial jw_map(const PauliString& p) {
    std::uint32_t mask = 0;
    int phase = 0;
    for (int n = 0; n < p.n_sites; n++) {
        bool x = (p.x_bits >> n) & 1;
        bool z = (p.z_bits >> n) & 1;
        if (!x && !z) {
            continue;
        }
        if (x) {
            // (prod_{j<n} Z_j) = (-i)^n a_0 a_1 ... a_{2n-1}
            std::uint32_t word = low_bits(2 * n) | (std::uint32_t{1} << (2 * n + (z ? 1 : 0)));
            multiply_word(mask, phase, word, (3 * n) & 3);
        } else {
            multiply_word(mask, phase, std::uint32_t{3} << (2 * n), 3);
        }
    }
    MajoranaMonomial m;
    m.mask = mask;
    m.phase_power = phase;
    for (std::uint32_t b = mask; b != 0; b &= b - 1) {
        m.indices.push_back(std::countr_zero(b));
    }
    return m;
}

double pfaffian_inplace(double* a, int n, int ld) {
    if (n == 0) {
        return 1.0;
    }
    if (n % 2 != 0) {
        return 0.0;
    }
    const auto& kt = kernels::active_kernels();
    double tau[64];
    double col[64];
    double pf = 1.0;
    for (int k = 0; k + 1 < n; k += 2) {
        int kp = k + 1;
        double best = std::abs(a[(k + 1) * ld + k]);
        for (int i = k + 2; i < n; i++) {
            double v = std::abs(a[i * ld + k]);
            if (v > best) {
                best = v;
                kp = i;
            }
        }
        if (kp != k + 1) {
            for (int j = k; j < n; j++) {
                std::swap(a[(k + 1) * ld + j], a[kp * ld + j]);
            }
            for (int i = k; i < n; i++) {
                std::swap(a[i * ld + k + 1], a[i * ld + kp]);
            }
            pf = -pf;
        }
        double piv = a[k * ld + k + 1];
        if (piv == 0.0) {
            return 0.0;
        }
        pf *= piv;
        int rest = n - k - 2;
        if (rest > 0) {
            for (int j = 0; j < rest; j++) {
                tau[j] = a[k * ld + k + 2 + j] / piv;
                col[j] = a[(k + 2 + j) * ld + k + 1];
            }
            double* sub = a + (k + 2) * ld + k + 2;
            kt.skew_rank2(sub, ld, sub, ld, rest, col, tau);
        }
    }
    return pf;
}

double pfaffian(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) {
        throw InvalidInput("pfaffian requires a square matrix");
    }
    if (a.rows() % 2 != 0) {
        throw InvalidInput("pfaffian requires even dimension");
    }
    if (a.rows() > 64) {
        throw ResourceError("pfaffian limited to 64 x 64");
    }
    if (a.size() == 0) {
        return 1.0;
    }
    if ((a + a.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
        throw InvalidInput("pfaffian requires an antisymmetric matrix");
    }
    const int n = static_cast<int>(a.rows());
    std::vector<double> buf(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) {
            buf[i * n + j] = a(i, j);
        }
    }
    return pfaffian_inplace(buf.data(), n, n);
}

double pauli_expectation(const PauliString& p, const MajoranaCorrelation& g) {
    if (p.n_sites != g.block_len()) {
        throw InvalidInput("Pauli string length does not match the block");
    }
    MajoranaMonomial m = jw_map(p);
    if (m.parity_odd()) {
        return 0.0;
    }
    const int k = static_cast<int>(m.indices.size());
    const int power = (m.phase_power + k / 2) & 3;
    if (power & 1) {
        throw InvalidInput("non-Hermitian Majorana image for " + p.str());
    }
    std::vector<double> buf(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; i++) {
        for (int j = 0; j < k; j++) {
            buf[i * k + j] = g(m.indices[i], m.indices[j]);
        }
    }
    double pf = pfaffian_inplace(buf.data(), k, k);
    return power == 0 ? pf : -pf;
}

}  // namespace sedyn
