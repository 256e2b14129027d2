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

// MZI convention used project-wide (photonic circuits encode/decode with the
// same matrix): on adjacent modes (p, p+1),
//
//   T(theta, phi) = | e^{i phi} cos(theta)   -sin(theta) |
//                   | e^{i phi} sin(theta)    cos(theta) |
//
// theta in [0, pi/2] is the splitting angle (theta = 0 passes through),
// phi the phase on the upper input. Physically one MZI realizes this as a
// phase phi on the upper arm followed by a symmetric beam-splitter pair with
// internal phase 2 theta; only the composite matrix matters here.

/// One MZI in the rectangular mesh.
struct Mzi {
    int mode = 0; // acts on (mode, mode + 1)
    double theta = 0.0;
    double phi = 0.0;
};

/// Rectangular-mesh parameters: mzi_list in application order (index 0 acts
/// first), then per-mode output phases.
struct ClementsParams {
    int nmode = 0;
    std::vector<Mzi> mzi_list;
    std::vector<double> output_phases;
};

inline cmat mzi_matrix(const Mzi &t, int nmode) {
    cmat u = cmat::Identity(nmode, nmode);
    const double c = std::cos(t.theta), s = std::sin(t.theta);
    const cdouble e = std::exp(cdouble(0.0, t.phi));
    u(t.mode, t.mode) = e * c;
    u(t.mode, t.mode + 1) = -s;
    u(t.mode + 1, t.mode) = e * s;
    u(t.mode + 1, t.mode + 1) = c;
    return u;
}

/// U = diag(e^{i output_phases}) * T_K * ... * T_1.
inline cmat clements_reconstruct(const ClementsParams &p) {
    require(p.nmode >= 1, "clements_reconstruct: nmode must be positive");
    require(static_cast<int>(p.output_phases.size()) == p.nmode,
            "clements_reconstruct: need one output phase per mode");
    cmat u = cmat::Identity(p.nmode, p.nmode);
    for (const Mzi &t : p.mzi_list) {
        require(t.mode >= 0 && t.mode + 1 < p.nmode, "clements_reconstruct: mode out of range");
        u = mzi_matrix(t, p.nmode) * u;
    }
    for (int i = 0; i < p.nmode; ++i)
        u.row(i) *= std::exp(cdouble(0.0, p.output_phases[i]));
    return u;
}

/// Decomposes a unitary into the rectangular mesh (nulling order alternating
/// between column and row eliminations along anti-diagonals), then commutes
/// the row factors through the final diagonal so everything lands in
/// mzi_list + output_phases form. Round-trips through clements_reconstruct
/// to ~1e-9 elementwise.
inline ClementsParams clements_decompose(const cmat &u_in) {
    require(u_in.rows() == u_in.cols(), "clements_decompose: matrix must be square");
    require(approx_unitary(u_in, 1e-8), "clements_decompose: input not unitary within 1e-8");
    const int m = static_cast<int>(u_in.rows());
    cmat w = u_in;

    struct Factor {
        int mode;
        double theta, phi;
    };
    std::vector<Factor> rights; // T^{-1} applied on columns, in application order
    std::vector<Factor> lefts;  // T applied on rows, in application order

    for (int i = 0; i < m - 1; ++i) {
        if (i % 2 == 0) {
            for (int j = 0; j <= i; ++j) {
                const int r = m - 1 - j;
                const int q = i - j;
                const cdouble a = w(r, q), b = w(r, q + 1);
                const double theta = std::atan2(std::abs(a), std::abs(b));
                const double phi =
                    (std::abs(a) < 1e-300) ? 0.0 : std::arg(a) - std::arg(b);
                const double c = std::cos(theta), s = std::sin(theta);
                const cdouble em = std::exp(cdouble(0.0, -phi));
                // w <- w * T^{-1}(theta, phi) on columns (q, q+1)
                for (int row = 0; row < m; ++row) {
                    const cdouble x = w(row, q), y = w(row, q + 1);
                    w(row, q) = em * c * x - s * y;
                    w(row, q + 1) = em * s * x + c * y;
                }
                rights.push_back({q, theta, phi});
            }
        } else {
            for (int j = 0; j <= i; ++j) {
                const int r = m - 1 - i + j;
                const int cidx = j;
                const int p = r - 1;
                const cdouble a = w(p, cidx), b = w(p + 1, cidx);
                const double theta = std::atan2(std::abs(b), std::abs(a));
                const double phi =
                    (std::abs(b) < 1e-300) ? 0.0 : kPi + std::arg(b) - std::arg(a);
                const double c = std::cos(theta), s = std::sin(theta);
                const cdouble ep = std::exp(cdouble(0.0, phi));
                // w <- T(theta, phi) * w on rows (p, p+1)
                for (int col = 0; col < m; ++col) {
                    const cdouble x = w(p, col), y = w(p + 1, col);
                    w(p, col) = ep * c * x - s * y;
                    w(p + 1, col) = ep * s * x + c * y;
                }
                lefts.push_back({p, theta, phi});
            }
        }
    }

    // w is now diagonal: lefts * U * inverse-rights = D, so
    // U = lefts^{-1} ... D ... rights. Push every left factor through D,
    // innermost first: T^{-1}(theta, phi) diag(d1, d2) =
    // diag(-e^{-i phi} d2, d2) T(theta, arg(-d1/d2)).
    std::vector<cdouble> d(m);
    for (int i = 0; i < m; ++i) d[i] = w(i, i);

    std::vector<Factor> lefts_out; // transformed lefts, innermost first
    for (auto it = lefts.rbegin(); it != lefts.rend(); ++it) {
        const int p = it->mode;
        if (it->theta < 1e-14) {
            // Pass-through MZI: T^{-1}(0, phi) is diagonal, absorb directly.
            d[p] *= std::exp(cdouble(0.0, -it->phi));
            lefts_out.push_back({p, 0.0, 0.0});
            continue;
        }
        const cdouble d1 = d[p], d2 = d[p + 1];
        const double phi_new = std::arg(-d1 / d2);
        d[p] = -std::exp(cdouble(0.0, -it->phi)) * d2;
        d[p + 1] = d2;
        lefts_out.push_back({p, it->theta, phi_new});
    }

    ClementsParams out;
    out.nmode = m;
    // Application order: rights first (R_1 ... R_b), then the transformed
    // lefts innermost-outward, which is lefts_out as built.
    for (const Factor &f : rights) out.mzi_list.push_back({f.mode, f.theta, f.phi});
    for (const Factor &f : lefts_out) out.mzi_list.push_back({f.mode, f.theta, f.phi});
    out.output_phases.resize(m);
    for (int i = 0; i < m; ++i) out.output_phases[i] = std::arg(d[i]);
    return out;
}

} // namespace quasar::linalg
