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

// Every Pauli string maps to a distinct Majorana subset, so the moment sums are
// sums of Pf(gamma_S)^2 and Pf(gamma_S)^4 over even subsets S. The Schur
// enumeration walks subsets in index order. A node carries the Pfaffian p of the
// indices eliminated so far and the Schur complement of gamma over the rest, so
// that Pf(gamma_{S u T}) = p * Pf(C_{Q u T}) for pending indices Q and later
// indices T. An index joins Q instead of being eliminated when no pending
// partner offers a pivot above the tolerance; leftover pending indices are
// resolved by a pivoted Pfaffian.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>
#include <vector>

#include "sedyn/errors.hpp"
#include "sedyn/kernels/kernels.hpp"
#include "sedyn/pauli_wick.hpp"

namespace sedyn {

namespace {

constexpr int kMaxMajoranas = 32;

struct Pending {
    std::array<std::int8_t, kMaxMajoranas> idx{};
    int size = 0;

    void push(int v) { idx[size++] = static_cast<std::int8_t>(v); }
    void erase_at(int pos) {
        for (int i = pos; i + 1 < size; i++) {
            idx[i] = idx[i + 1];
        }
        size--;
    }
};

struct Accumulator {
    double s2 = 0;
    double s4 = 0;
    std::uint64_t count = 0;

    void add(double v) {
        double v2 = v * v;
        s2 += v2;
        s4 += v2 * v2;
        count++;
    }
};

class SchurWalker {
   public:
    SchurWalker(int n, double tol) : n_(n), tol_(tol), kt_(&kernels::active_kernels()) {
        const std::size_t nn = static_cast<std::size_t>(n) * n;
        mats_.assign(static_cast<std::size_t>(n / 2 + 2) * nn, 0.0);
        u_.assign(n, 0.0);
        w_.assign(n, 0.0);
    }

    double* level(int depth) { return mats_.data() + static_cast<std::size_t>(depth) * n_ * n_; }

    // Subsets whose two smallest elements are a < b.
    void run_pair(const double* gamma, int a, int b, Accumulator& acc) {
        acc_ = &acc;
        Pending q;
        q.push(a);
        include(0, gamma, 1.0, q, b, true);
    }

   private:
    // Enumerate subsets T of [i, n) with |Q| + |T| even; T empty only if count_empty.
    void visit(int depth, const double* c, double p, const Pending& q, int i, bool count_empty) {
        if (q.size == 0) {
            if (count_empty) {
                acc_->add(p);
            }
            for (int a = i; a + 1 < n_; a++) {
                Pending q1;
                q1.push(a);
                visit(depth, c, p, q1, a + 1, false);
            }
            return;
        }
        if (q.size == 1) {
            const int x = q.idx[0];
            if (i < n_) {
                kt_->accumulate_pow24(c + x * n_ + i, n_ - i, p, &acc_->s2, &acc_->s4);
                acc_->count += n_ - i;
            }
            for (int b = i; b + 2 < n_; b++) {
                include(depth, c, p, q, b, false);
            }
            return;
        }
        if (count_empty && q.size % 2 == 0) {
            acc_->add(p * pending_pfaffian(c, q));
        }
        const bool need_more = q.size % 2 == 0;
        for (int a = i; a < n_; a++) {
            if (need_more && a + 1 >= n_) {
                break;
            }
            include(depth, c, p, q, a, true);
        }
    }

    // Adds index a to the pending set and eliminates the best pair through a.
    void include(int depth, const double* c, double p, Pending q, int a, bool count_empty) {
        int best = -1;
        double mag = 0;
        for (int s = 0; s < q.size; s++) {
            double v = std::abs(c[q.idx[s] * n_ + a]);
            if (v > mag) {
                mag = v;
                best = s;
            }
        }
        if (best < 0 || mag < tol_) {
            q.push(a);
            visit(depth, c, p, q, a + 1, count_empty);
            return;
        }
        const int r = q.idx[best];
        q.erase_at(best);
        double* out = level(depth + 1);
        eliminate(c, out, r, a, q);
        visit(depth + 1, out, p * c[r * n_ + a], q, a + 1, count_empty);
    }

    // Schur complement over the pivot pair (r, a), restricted to q and (a, n).
    void eliminate(const double* c, double* out, int r, int a, const Pending& q) {
        const double piv = c[r * n_ + a];
        const int s = a + 1;
        for (int j = s; j < n_; j++) {
            u_[j] = c[j * n_ + r] / piv;
            w_[j] = c[j * n_ + a];
        }
        for (int t = 0; t < q.size; t++) {
            int j = q.idx[t];
            u_[j] = c[j * n_ + r] / piv;
            w_[j] = c[j * n_ + a];
        }
        if (s < n_) {
            kt_->skew_rank2(c + s * n_ + s, n_, out + s * n_ + s, n_, n_ - s, u_.data() + s, w_.data() + s);
        }
        for (int t = 0; t < q.size; t++) {
            const int i = q.idx[t];
            const double ui = u_[i];
            const double wi = w_[i];
            for (int j = s; j < n_; j++) {
                double v = c[i * n_ + j] - ui * w_[j] + wi * u_[j];
                out[i * n_ + j] = v;
                out[j * n_ + i] = -v;
            }
            for (int t2 = 0; t2 < q.size; t2++) {
                const int j = q.idx[t2];
                out[i * n_ + j] = c[i * n_ + j] - ui * w_[j] + wi * u_[j];
            }
        }
    }

    double pending_pfaffian(const double* c, const Pending& q) {
        double buf[kMaxMajoranas * kMaxMajoranas];
        const int k = q.size;
        for (int i = 0; i < k; i++) {
            for (int j = 0; j < k; j++) {
                buf[i * k + j] = c[q.idx[i] * n_ + q.idx[j]];
            }
        }
        return pfaffian_inplace(buf, k, k);
    }

    int n_;
    double tol_;
    const kernels::KernelTable* kt_;
    std::vector<double> mats_;
    std::vector<double> u_;
    std::vector<double> w_;
    Accumulator* acc_ = nullptr;
};

MomentSums schur_sums(const MajoranaCorrelation& g, const MomentOptions& opts) {
    const int L = g.block_len();
    const int n = 2 * L;
    std::vector<double> gamma(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) {
            gamma[i * n + j] = g(i, j);
        }
    }
    std::vector<std::pair<int, int>> tasks;
    for (int a = 0; a + 1 < n; a++) {
        for (int b = a + 1; b < n; b++) {
            tasks.emplace_back(a, b);
        }
    }
    std::vector<Accumulator> partial(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        SchurWalker walker(n, opts.pivot_tolerance);
        for (;;) {
            std::size_t t = next.fetch_add(1, std::memory_order_relaxed);
            if (t >= tasks.size()) {
                break;
            }
            walker.run_pair(gamma.data(), tasks[t].first, tasks[t].second, partial[t]);
        }
    };
    int threads = std::min<int>(resolve_thread_count(opts.threads), static_cast<int>(tasks.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; t++) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    MomentSums out;
    out.block_len = L;
    out.sum_sq = 1.0;
    out.sum_quad = 1.0;
    out.even_strings = 1;
    for (const auto& acc : partial) {
        out.sum_sq += acc.s2;
        out.sum_quad += acc.s4;
        out.even_strings += acc.count;
    }
    out.skipped_odd = (std::uint64_t{1} << (2 * L)) - out.even_strings;
    return out;
}

MomentSums reference_sums(const MajoranaCorrelation& g) {
    const int L = g.block_len();
    MomentSums out;
    out.block_len = L;
    const std::uint32_t dim = std::uint32_t{1} << L;
    for (std::uint32_t x = 0; x < dim; x++) {
        for (std::uint32_t z = 0; z < dim; z++) {
            PauliString p{x, z, L};
            if (jw_map(p).parity_odd()) {
                out.skipped_odd++;
                continue;
            }
            double v = pauli_expectation(p, g);
            double v2 = v * v;
            out.sum_sq += v2;
            out.sum_quad += v2 * v2;
            out.even_strings++;
        }
    }
    return out;
}

}  // namespace

int resolve_thread_count(int requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("SEDYN_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) {
            return v;
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

MomentSums moment_sums(const MajoranaCorrelation& g, const MomentOptions& opts) {
    const int L = g.block_len();
    if (L > opts.max_block_len || L > 16) {
        throw ResourceError("block length " + std::to_string(L) + " exceeds the configured maximum " +
                            std::to_string(std::min(opts.max_block_len, 16)));
    }
    if (L == 0) {
        MomentSums out;
        out.sum_sq = 1;
        out.sum_quad = 1;
        out.even_strings = 1;
        return out;
    }
    if (opts.method == MomentMethod::Reference) {
        return reference_sums(g);
    }
    return schur_sums(g, opts);
}

}  // namespace sedyn
