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

/// Torontonian of a 2m x 2m matrix in mode-doubled layout (mode i owns rows
/// i and i+m):
///
///   Tor(O) = sum_{S subset of [m]} (-1)^(m-|S|) / sqrt(det(I - O_S))
///
/// O_S keeps both rows/columns of every mode in S. Requires spectral norm
/// below 1 for the determinants to stay away from zero; principal branch of
/// the complex square root.
inline cdouble torontonian(const cmat &o) {
    require(o.rows() == o.cols(), "torontonian: matrix must be square");
    const int dim = static_cast<int>(o.rows());
    require(dim % 2 == 0, "torontonian: dimension must be even");
    const int m = dim / 2;

    cdouble total(0.0, 0.0);
    const std::uint64_t subsets = 1ull << m;
    for (std::uint64_t s = 0; s < subsets; ++s) {
        const int k = __builtin_popcountll(s);
        if (k == 0) {
            total += ((m & 1) ? -1.0 : 1.0);
            continue;
        }
        std::vector<int> modes;
        modes.reserve(k);
        for (int p = 0; p < m; ++p)
            if ((s >> p) & 1ull) modes.push_back(p);
        cmat block(2 * k, 2 * k);
        for (int r = 0; r < 2 * k; ++r) {
            const int gr = (r < k) ? modes[r] : modes[r - k] + m;
            for (int c = 0; c < 2 * k; ++c) {
                const int gc = (c < k) ? modes[c] : modes[c - k] + m;
                block(r, c) = -o(gr, gc);
            }
        }
        block += cmat::Identity(2 * k, 2 * k);
        const cdouble det = Eigen::PartialPivLU<cmat>(block).determinant();
        if (std::abs(det) < 1e-300)
            throw guard_error("torontonian: singular I - O_S block");
        total += (((m - k) & 1) ? -1.0 : 1.0) / std::sqrt(det);
    }
    return total;
}

} // namespace quasar::linalg
