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

#include "quasar/linalg/takagi.hpp"
#include "quasar/photonic/gaussian_prob.hpp"

namespace quasar::photonic {

/// Gaussian boson sampling setup: per-mode squeezing into an interferometer,
/// measured with PNRD or threshold detectors.
struct GBSSpec {
    int nmode = 0;
    std::vector<double> squeezing;
    cmat unitary;
    std::string detector = "pnrd";
};

/// Squeezed vacua through the interferometer, in covariance form.
inline GaussianState build_gbs_state(const GBSSpec &spec, double hbar = 2.0) {
    require(spec.nmode >= 1, "gbs: nmode >= 1");
    require(static_cast<int>(spec.squeezing.size()) == spec.nmode,
            "gbs: one squeezing parameter per mode");
    require(approx_unitary(spec.unitary, 1e-8), "gbs: interferometer must be unitary");
    GaussianState state = GaussianState::vacuum(spec.nmode, hbar);
    for (int i = 0; i < spec.nmode; ++i)
        state = evolve(state, symplectic_of(pgate("s", {i}, {spec.squeezing[i]}), spec.nmode));
    // interferometer rows i, cols j as one symplectic
    const int m = spec.nmode;
    SymplecticOp op;
    op.s = rmat::Zero(2 * m, 2 * m);
    op.shift = rvec::Zero(2 * m);
    op.s.topLeftCorner(m, m) = spec.unitary.real();
    op.s.topRightCorner(m, m) = spec.unitary.imag();
    op.s.bottomLeftCorner(m, m) = -spec.unitary.imag();
    op.s.bottomRightCorner(m, m) = spec.unitary.real();
    return evolve(state, op);
}

/// Encodes a graph: Takagi-decompose the adjacency A = U diag(l) U^T, scale
/// by c with c l_max < 1, squeeze each mode by artanh(c l_i) and interfere
/// with U. The state's a-a block of X(I - Q^{-1}) comes out proportional to
/// A, which is what GBS graph algorithms rely on.
struct GraphEncoding {
    GBSSpec spec;
    double scale = 0.0; // the c actually used
};

inline GraphEncoding gbs_from_graph(const rmat &adjacency, double mean_photon,
                                    double scale_override = 0.0) {
    const int m = static_cast<int>(adjacency.rows());
    require(adjacency.cols() == m, "gbs_from_graph: adjacency must be square");
    require((adjacency - adjacency.transpose()).cwiseAbs().maxCoeff() < 1e-10,
            "gbs_from_graph: adjacency must be symmetric");
    auto tak = linalg::takagi(adjacency.cast<cdouble>());
    const double lmax = tak.lambdas.size() ? tak.lambdas(0) : 0.0;

    if (lmax < 1e-14) {
        // empty graph: nothing to squeeze, vacuum output
        GraphEncoding out;
        out.scale = 0.0;
        out.spec.nmode = m;
        out.spec.unitary = tak.u;
        out.spec.squeezing.assign(m, 0.0);
        return out;
    }

    double c = scale_override;
    if (c <= 0.0) {
        require(mean_photon > 0.0, "gbs_from_graph: mean photon target must be positive");
        // bisection: total mean photons sum_i sinh^2(artanh(c l_i)) is
        // monotone in c on (0, 1/lmax)
        double lo = 0.0, hi = (1.0 - 1e-12) / lmax;
        auto photons = [&](double cc) {
            double total = 0.0;
            for (int i = 0; i < m; ++i) {
                const double t = cc * tak.lambdas(i);
                total += t * t / (1.0 - t * t); // sinh^2(artanh t)
            }
            return total;
        };
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (photons(mid) < mean_photon ? lo : hi) = mid;
        }
        c = 0.5 * (lo + hi);
    } else {
        require(c * lmax < 1.0, "gbs_from_graph: scale infeasible (c l_max >= 1)");
    }

    GraphEncoding out;
    out.scale = c;
    out.spec.nmode = m;
    out.spec.unitary = tak.u;
    out.spec.squeezing.resize(m);
    for (int i = 0; i < m; ++i) out.spec.squeezing[i] = std::atanh(c * tak.lambdas(i));
    return out;
}

/// a-a block of X(I - Q^{-1}); for a graph encoding this is proportional to
/// the adjacency.
inline cmat gbs_b_matrix(const GaussianState &state) {
    const int m = state.nmode();
    const cmat q = husimi_q(state);
    const cmat o = cmat::Identity(2 * m, 2 * m) - q.inverse();
    return o.bottomLeftCorner(m, m); // (X O) top-left = O bottom-left
}

} // namespace quasar::photonic
