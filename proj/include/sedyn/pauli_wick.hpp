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
#include <string>
#include <string_view>
#include <vector>

#include "sedyn/fermion_core.hpp"

namespace sedyn {

/// Pauli string on a block of up to 16 sites; site i carries X if x_bits bit i is
/// set, Z if z_bits bit i is set, Y if both.
struct PauliString {
    std::uint32_t x_bits = 0;
    std::uint32_t z_bits = 0;
    int n_sites = 0;

    /// "XIZY" style, site 0 first.
    static PauliString parse(std::string_view text);
    std::string str() const;
    bool is_identity() const { return (x_bits | z_bits) == 0; }
};

/// i^phase_power * a_{indices[0]} a_{indices[1]} ... with increasing 0-based indices.
struct MajoranaMonomial {
    std::vector<int> indices;
    int phase_power = 0;
    std::uint32_t mask = 0;

    bool parity_odd() const { return indices.size() % 2 == 1; }
};

MajoranaMonomial jw_map(const PauliString& p);

/// Pfaffian by skew-symmetric Parlett-Reid elimination with partial pivoting.
/// Throws InvalidInput on odd dimension or asymmetry above 1e-10.
double pfaffian(const Eigen::MatrixXd& a);

/// Unchecked variant on a row-major n x n buffer with leading dimension ld.
/// The buffer is overwritten.
double pfaffian_inplace(double* a, int n, int ld);

/// <P> in the Gaussian state described by g. Zero for parity-odd strings.
double pauli_expectation(const PauliString& p, const MajoranaCorrelation& g);

/// Sums over all 4^L Pauli strings of <P>^2 and <P>^4.
struct MomentSums {
    int block_len = 0;
    double sum_sq = 0;
    double sum_quad = 0;
    /// Strings that entered the sums / strings skipped for odd Majorana parity.
    std::uint64_t even_strings = 0;
    std::uint64_t skipped_odd = 0;
};

enum class MomentMethod {
    /// Depth-first enumeration of Majorana subsets carrying Schur complements,
    /// with delayed pivoting.
    Schur,
    /// One Pfaffian per Pauli string.
    Reference,
};

struct MomentOptions {
    int max_block_len = 14;
    /// 0: SEDYN_THREADS if set, else hardware concurrency.
    int threads = 0;
    /// Elimination pivots smaller in magnitude than this stay pending.
    double pivot_tolerance = 1e-3;
    MomentMethod method = MomentMethod::Schur;
};

MomentSums moment_sums(const MajoranaCorrelation& g, const MomentOptions& opts = {});

/// Resolves MomentOptions::threads.
int resolve_thread_count(int requested);

}  // namespace sedyn
