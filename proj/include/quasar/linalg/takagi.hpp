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

/// Takagi (Autonne) factorization A = U diag(lambda) U^T of a complex
/// symmetric matrix, lambda >= 0 sorted descending.
struct TakagiResult {
    cmat u;
    rvec lambdas;
};

namespace detail {

/// Square root S of a symmetric unitary Z with S S^T = Z. Z = X + iY with
/// X, Y real symmetric and commuting, so a joint real orthogonal eigenbasis
/// exists; take half-phases there.
inline cmat symmetric_unitary_sqrt(const cmat &z) {
    const int n = static_cast<int>(z.rows());
    rmat x = z.real();
    rmat y = z.imag();
    x = 0.5 * (x + x.transpose());
    y = 0.5 * (y + y.transpose());
    Eigen::SelfAdjointEigenSolver<rmat> ex(x);
    rmat q = ex.eigenvectors();
    rvec xv = ex.eigenvalues();
    // Refine within degenerate clusters of X so that Y is diagonal there too.
    int start = 0;
    const double tol = 1e-8;
    while (start < n) {
        int stop = start + 1;
        while (stop < n && std::abs(xv(stop) - xv(start)) < tol) ++stop;
        const int len = stop - start;
        if (len > 1) {
            rmat yb = q.middleCols(start, len).transpose() * y * q.middleCols(start, len);
            Eigen::SelfAdjointEigenSolver<rmat> ey(yb);
            q.middleCols(start, len) = q.middleCols(start, len) * ey.eigenvectors();
        }
        start = stop;
    }
    cvec half(n);
    for (int i = 0; i < n; ++i) {
        const double xi = q.col(i).dot(x * q.col(i));
        const double yi = q.col(i).dot(y * q.col(i));
        half(i) = std::exp(cdouble(0.0, 0.5 * std::atan2(yi, xi)));
    }
    return q.cast<cdouble>() * half.asDiagonal() * q.transpose().cast<cdouble>();
}

} // namespace detail

/// SVD route: A = P S Q^dagger, and Z = P^dagger conj(Q) is block-diagonal
/// over equal singular values with symmetric unitary blocks; U = P sqrt(Z)
/// blockwise. Handles degenerate spectra (e.g. antisymmetric-looking inputs
/// like [[0,1],[1,0]]) deterministically. Columns are sign-fixed so the
/// factorization is reproducible.
inline TakagiResult takagi(const cmat &a, double sym_tol = 1e-10) {
    require(a.rows() == a.cols(), "takagi: matrix must be square");
    require(approx_symmetric(a, std::max(sym_tol, 1e-10 * std::max(1.0, a.cwiseAbs().maxCoeff()))),
            "takagi: matrix must be complex symmetric");
    const int n = static_cast<int>(a.rows());
    const cmat as = 0.5 * (a + a.transpose());

    Eigen::JacobiSVD<cmat> svd(as, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const cmat p = svd.matrixU();
    const cmat q = svd.matrixV();
    const rvec sig = svd.singularValues(); // descending

    const cmat z = p.adjoint() * q.conjugate();
    cmat s = cmat::Identity(n, n);
    int start = 0;
    const double scale = std::max(1.0, sig.size() ? sig(0) : 1.0);
    while (start < n) {
        int stop = start + 1;
        while (stop < n && std::abs(sig(stop) - sig(start)) < 1e-10 * scale) ++stop;
        const int len = stop - start;
        s.block(start, start, len, len) =
            detail::symmetric_unitary_sqrt(z.block(start, start, len, len));
        start = stop;
    }

    TakagiResult out;
    out.u = p * s;
    out.lambdas = sig;
    // Sign canonicalization: flipping a column leaves U diag U^T invariant.
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) {
            const cdouble v = out.u(r, c);
            if (std::abs(v) > 1e-10) {
                if (v.real() < -1e-12 || (std::abs(v.real()) <= 1e-12 && v.imag() < 0))
                    out.u.col(c) *= -1.0;
                break;
            }
        }
    }
    return out;
}

} // namespace quasar::linalg
