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

inline constexpr int kPermanentMaxDim = 30;

/// Permanent of a square complex matrix by Ryser's formula with Gray-code
/// column updates, O(2^n * n). The Gray walk keeps running row sums so each
/// subset costs one column add/subtract instead of a rebuild.
inline cdouble permanent(const cmat &a) {
    require(a.rows() == a.cols(), "permanent: matrix must be square");
    const int n = static_cast<int>(a.rows());
    require(n <= kPermanentMaxDim, "permanent: dimension above hard limit 30");
    if (n == 0) return {1.0, 0.0};

    std::vector<cdouble> rowsum(n, cdouble(0.0, 0.0));
    cdouble total(0.0, 0.0);
    const std::uint64_t count = 1ull << n;
    std::uint64_t gray_prev = 0;
    for (std::uint64_t k = 1; k < count; ++k) {
        const std::uint64_t gray = k ^ (k >> 1);
        const std::uint64_t changed = gray ^ gray_prev;
        int col = 0;
        while (!((changed >> col) & 1ull)) ++col;
        const double sign_col = (gray & changed) ? 1.0 : -1.0;
        for (int i = 0; i < n; ++i) rowsum[i] += sign_col * a(i, col);
        gray_prev = gray;

        cdouble prod(1.0, 0.0);
        for (int i = 0; i < n; ++i) prod *= rowsum[i];
        const int bits = __builtin_popcountll(gray);
        total += ((n - bits) & 1) ? -prod : prod;
    }
    return total;
}

} // namespace quasar::linalg
