// Copyright 2026 The Quasar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "quasar/core.hpp"

namespace quasar::linalg {

/// Hafnian of a symmetric 2k x 2k complex matrix by the power-trace
/// algorithm: pair up indices (2i, 2i+1), sum over pair subsets S, and for
/// each subset extract the z^k coefficient of
/// exp(sum_j tr((X A_S)^j) / (2j) z^j) with X the pairwise swap. Each subset
/// costs a handful of matrix products, so the total is O(2^k poly(k)).
///
/// Inputs asymmetric beyond `sym_tol` are rejected; below it the matrix is
/// symmetrized, since only (A + A^T)/2 contributes.
inline cdouble hafnian(const cmat &a_in, double sym_tol = 1e-10) {
    require(a_in.rows() == a_in.cols(), "hafnian: matrix must be square");
    const int n = static_cast<int>(a_in.rows());
    require(n % 2 == 0, "hafnian: dimension must be even");
    if (n == 0) return {1.0, 0.0};
    const double scale = std::max(1.0, a_in.cwiseAbs().maxCoeff());
    require((a_in - a_in.transpose()).cwiseAbs().maxCoeff() <= sym_tol * scale,
            "hafnian: matrix asymmetric beyond tolerance");
    const cmat a = 0.5 * (a_in + a_in.transpose());
    if (n == 2) return a(0, 1);

    const int m = n / 2;
    cdouble total(0.0, 0.0);
    const std::uint64_t subsets = 1ull << m;
    for (std::uint64_t s = 1; s < subsets; ++s) {
        const int npairs = __builtin_popcountll(s);
        const int dim = 2 * npairs;
        // Rows/cols of the chosen pairs, with X A gathered directly: X swaps
        // the two members of each pair, so row 2i of X A_S is row 2i+1 of A_S.
        std::vector<int> cols;
        cols.reserve(dim);
        for (int p = 0; p < m; ++p)
            if ((s >> p) & 1ull) {
                cols.push_back(2 * p);
                cols.push_back(2 * p + 1);
            }
        cmat xa(dim, dim);
        for (int r = 0; r < dim; ++r) {
            const int swapped = (r % 2 == 0) ? cols[r] + 1 : cols[r] - 1;
            for (int c = 0; c < dim; ++c) xa(r, c) = a(swapped, cols[c]);
        }
        // Power sums tr((XA)^j), j = 1..m, by successive multiplication.
        std::vector<cdouble> g(m + 1, cdouble(0.0, 0.0));
        cmat pw = xa;
        g[1] = pw.trace() / 2.0;
        for (int j = 2; j <= m; ++j) {
            pw = pw * xa;
            g[j] = pw.trace() / (2.0 * j);
        }
        // exp-series coefficients E_k = (1/k) sum_j j g_j E_{k-j}.
        std::vector<cdouble> e(m + 1, cdouble(0.0, 0.0));
        e[0] = 1.0;
        for (int k = 1; k <= m; ++k) {
            cdouble acc(0.0, 0.0);
            for (int j = 1; j <= k; ++j) acc += static_cast<double>(j) * g[j] * e[k - j];
            e[k] = acc / static_cast<double>(k);
        }
        total += (((m - npairs) & 1) ? -1.0 : 1.0) * e[m];
    }
    return total;
}

} // namespace quasar::linalg
