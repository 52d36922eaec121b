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

#include "sedyn/pauli_wick.hpp"

namespace sedyn {

/// Entropic summary of an L-site block. All logarithms base 2.
struct SEReport {
    int L = 0;
    double purity = 1;  // tr rho^2
    double S2 = 0;      // -log2 purity
    double W = 1;       // 2^-L sum_P <P>^4
    double M2 = 0;      // -log2 W - S2
    double T2 = 0;      // S2 - L
    double T4 = 0;      // -log2 W - L
};

/// Throws InvalidInput if sum_sq < 1 - 1e-9 or the sums are otherwise inconsistent.
SEReport se_report(const MomentSums& m);

/// Convenience: moment sums followed by se_report.
SEReport se_report(const MajoranaCorrelation& g, const MomentOptions& opts = {});

}  // namespace sedyn
