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

namespace quasar::photonic {

// Gate conventions, fixed here and used identically by every backend.
//
// Fock-side mode unitaries (creation operators map as a_j^+ -> sum_i U_ij a_i^+):
//   ps(phi)          : e^{i phi n}, so |1> picks up e^{+i phi}
//   bs([t, phi])     : [[cos t, -e^{-i phi} sin t], [e^{i phi} sin t, cos t]]
//   mzi([t, phi])    : [[e^{i phi} cos t, -sin t], [e^{i phi} sin t, cos t]]
//   bs_h(t)          : [[cos(t/2), sin(t/2)], [sin(t/2), -cos(t/2)]]
//   h                : [[1, 1], [1, -1]] / sqrt(2)   (dual-rail Hadamard)
//   dc(t)            : [[cos(t/2), i sin(t/2)], [i sin(t/2), cos(t/2)]]
//   s([r, theta])    : squeezer, S^+ a S = a cosh r - a^+ e^{i theta} sinh r
//
// The phase-space backends (Gaussian, Bosonic, TDM) use the complex
// conjugate of each mode unitary, so that a positive phase rotates (x, p)
// clockwise: ps(phi) acts as [[cos phi, sin phi], [-sin phi, cos phi]] in
// xxpp. A global conjugation is unobservable in photon statistics, which is
// what the cross-backend checks compare; it matters only for the sign of
// x-p correlations, where the phase-space convention is the one documented
// here.

struct PhotonicGate {
    std::string name;
    std::vector<int> wires;
    std::vector<double> params;
    bool encode = false;

    // delay-loop fields (TDM programs only)
    int ntau = 0;
};

inline PhotonicGate pgate(std::string name, std::vector<int> wires,
                          std::vector<double> params = {}, bool encode = false) {
    PhotonicGate g;
    g.name = std::move(name);
    g.wires = std::move(wires);
    g.params = std::move(params);
    g.encode = encode;
    return g;
}

inline bool is_linear_optical(const std::string &name) {
    return name == "ps" || name == "bs" || name == "bs_h" || name == "h" || name == "dc" ||
           name == "mzi" || name == "r";
}

/// 2x2 mode unitary for a two-mode linear-optical gate.
inline cmat two_mode_unitary(const PhotonicGate &g) {
    const auto &p = g.params;
    cmat u(2, 2);
    if (g.name == "bs") {
        require(p.size() == 2, "bs: params [theta, phi]");
        const double c = std::cos(p[0]), s = std::sin(p[0]);
        u << c, -std::exp(cdouble(0, -p[1])) * s, std::exp(cdouble(0, p[1])) * s, c;
        return u;
    }
    if (g.name == "mzi") {
        require(p.size() == 2, "mzi: params [theta, phi]");
        const double c = std::cos(p[0]), s = std::sin(p[0]);
        const cdouble e = std::exp(cdouble(0, p[1]));
        u << e * c, -s, e * s, c;
        return u;
    }
    if (g.name == "bs_h") {
        require(p.size() == 1, "bs_h: params [theta]");
        const double c = std::cos(p[0] / 2), s = std::sin(p[0] / 2);
        u << c, s, s, -c;
        return u;
    }
    if (g.name == "h") {
        const double r = 1.0 / std::sqrt(2.0);
        u << r, r, r, -r;
        return u;
    }
    if (g.name == "dc") {
        const double t = p.empty() ? kPi / 2 : p[0];
        const double c = std::cos(t / 2), s = std::sin(t / 2);
        u << c, cdouble(0, 1) * s, cdouble(0, 1) * s, c;
        return u;
    }
    throw invalid_input("not a two-mode linear gate: " + g.name);
}

/// m x m mode unitary of a photon-number-conserving circuit.
inline cmat circuit_mode_unitary(const std::vector<PhotonicGate> &gates, int nmode) {
    cmat u = cmat::Identity(nmode, nmode);
    for (const auto &g : gates) {
        require(is_linear_optical(g.name),
                "gate " + g.name + " is not linear-optical; use the matching backend");
        if (g.name == "ps" || g.name == "r") {
            require(g.wires.size() == 1 && g.params.size() == 1, "ps: one wire, one phase");
            const int w = g.wires[0];
            require(w >= 0 && w < nmode, "ps: wire out of range");
            u.row(w) *= std::exp(cdouble(0, g.params[0]));
            continue;
        }
        require(g.wires.size() == 2, g.name + ": two wires expected");
        const int a = g.wires[0], b = g.wires[1];
        require(a >= 0 && a < nmode && b >= 0 && b < nmode && a != b,
                g.name + ": wires out of range");
        const cmat blk = two_mode_unitary(g);
        // rows a, b of u get mixed: embedded_gate * u
        for (int col = 0; col < nmode; ++col) {
            const cdouble ua = u(a, col), ub = u(b, col);
            u(a, col) = blk(0, 0) * ua + blk(0, 1) * ub;
            u(b, col) = blk(1, 0) * ua + blk(1, 1) * ub;
        }
    }
    return u;
}

} // namespace quasar::photonic
