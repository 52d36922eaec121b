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

#include "sedyn/se_metrics.hpp"

#include <cmath>
#include <sstream>

#include "sedyn/errors.hpp"

namespace sedyn {

SEReport se_report(const MomentSums& m) {
    if (!(m.sum_sq >= 1 - 1e-9) || !(m.sum_quad > 0) || !std::isfinite(m.sum_sq) || !std::isfinite(m.sum_quad)) {
        std::ostringstream ss;
        ss << "degenerate moment sums (sum_sq=" << m.sum_sq << ", sum_quad=" << m.sum_quad << ")";
        throw InvalidInput(ss.str());
    }
    if (m.sum_quad > m.sum_sq * (1 + 1e-9) || m.sum_sq > std::ldexp(1.0 + 1e-9, m.block_len)) {
        std::ostringstream ss;
        ss << "inconsistent moment sums (L=" << m.block_len << ", sum_sq=" << m.sum_sq << ", sum_quad=" << m.sum_quad
           << ")";
        throw InvalidInput(ss.str());
    }
    SEReport r;
    r.L = m.block_len;
    const double scale = std::ldexp(1.0, -m.block_len);
    r.purity = scale * m.sum_sq;
    r.W = scale * m.sum_quad;
    r.S2 = -std::log2(r.purity);
    r.M2 = std::log2(m.sum_sq / m.sum_quad);
    r.T2 = r.S2 - m.block_len;
    r.T4 = r.T2 + r.M2;
    return r;
}

SEReport se_report(const MajoranaCorrelation& g, const MomentOptions& opts) {
    return se_report(moment_sums(g, opts));
}

}  // namespace sedyn
