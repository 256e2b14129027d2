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

#include "quasar/mbqc/pattern.hpp"
#include "quasar/qubit/circuit.hpp"

namespace quasar::mbqc {

namespace detail {

struct JOrCz {
    bool is_cz = false;
    int q = 0, q2 = 0;
    double angle = 0.0; // J angle
};

inline void emit_j(std::vector<JOrCz> &out, int q, double angle) {
    out.push_back({false, q, 0, angle});
}
inline void emit_cz(std::vector<JOrCz> &out, int a, int b) { out.push_back({true, a, b, 0.0}); }

// J(a) = H Rz(a), so Rz(a) = J(0) J(a) and Rx(a) = J(a) J(0) (matrix
// order; emission below is in application order, rightmost factor first).
inline void emit_rz(std::vector<JOrCz> &out, int q, double a) {
    emit_j(out, q, a);
    emit_j(out, q, 0.0);
}
inline void emit_rx(std::vector<JOrCz> &out, int q, double a) {
    emit_j(out, q, 0.0);
    emit_j(out, q, a);
}
inline void emit_ry(std::vector<JOrCz> &out, int q, double a) {
    // Ry(a) = Rz(pi/2) Rx(a) Rz(-pi/2)
    emit_rz(out, q, -kPi / 2);
    emit_rx(out, q, a);
    emit_rz(out, q, kPi / 2);
}
inline void emit_h(std::vector<JOrCz> &out, int q) { emit_j(out, q, 0.0); }
inline void emit_cnot(std::vector<JOrCz> &out, int c, int t) {
    emit_h(out, t);
    emit_cz(out, c, t);
    emit_h(out, t);
}
inline void emit_rzz(std::vector<JOrCz> &out, int a, int b, double theta) {
    emit_cnot(out, a, b);
    emit_rz(out, b, theta);
    emit_cnot(out, a, b);
}

/// Gate -> J/CZ stream; global phases are dropped (MBQC output equality is
/// up to global phase anyway).
inline void lower_gate(std::vector<JOrCz> &out, const qubit::Gate &g) {
    const auto &p = g.params;
    const int w0 = g.wires.empty() ? 0 : g.wires[0];
    if (g.controls.empty()) {
        if (g.name == "h") return emit_h(out, w0);
        if (g.name == "x") return emit_rx(out, w0, kPi);
        if (g.name == "y") {
            emit_rx(out, w0, kPi);
            return emit_rz(out, w0, kPi);
        }
        if (g.name == "z") return emit_rz(out, w0, kPi);
        if (g.name == "s") return emit_rz(out, w0, kPi / 2);
        if (g.name == "t") return emit_rz(out, w0, kPi / 4);
        if (g.name == "p") return emit_rz(out, w0, p[0]);
        if (g.name == "rx") return emit_rx(out, w0, p[0]);
        if (g.name == "ry") return emit_ry(out, w0, p[0]);
        if (g.name == "rz") return emit_rz(out, w0, p[0]);
        if (g.name == "u3") {
            emit_rz(out, w0, p[2]);
            emit_ry(out, w0, p[0]);
            return emit_rz(out, w0, p[1]);
        }
        if (g.name == "swap") {
            emit_cnot(out, g.wires[0], g.wires[1]);
            emit_cnot(out, g.wires[1], g.wires[0]);
            return emit_cnot(out, g.wires[0], g.wires[1]);
        }
        if (g.name == "rzz") return emit_rzz(out, g.wires[0], g.wires[1], p[0]);
        if (g.name == "rxx") {
            emit_h(out, g.wires[0]);
            emit_h(out, g.wires[1]);
            emit_rzz(out, g.wires[0], g.wires[1], p[0]);
            emit_h(out, g.wires[0]);
            return emit_h(out, g.wires[1]);
        }
        if (g.name == "ryy") {
            emit_rx(out, g.wires[0], kPi / 2);
            emit_rx(out, g.wires[1], kPi / 2);
            emit_rzz(out, g.wires[0], g.wires[1], p[0]);
            emit_rx(out, g.wires[0], -kPi / 2);
            return emit_rx(out, g.wires[1], -kPi / 2);
        }
    } else if (g.controls.size() == 1) {
        const int c = g.controls[0], t = w0;
        if (g.name == "x") return emit_cnot(out, c, t);
        if (g.name == "z") return emit_cz(out, c, t);
        if (g.name == "p") {
            emit_rz(out, c, p[0] / 2);
            emit_rz(out, t, p[0] / 2);
            return emit_rzz(out, c, t, -p[0] / 2);
        }
        if (g.name == "ry") {
            emit_ry(out, t, p[0] / 2);
            emit_cnot(out, c, t);
            emit_ry(out, t, -p[0] / 2);
            return emit_cnot(out, c, t);
        }
    }
    throw invalid_input("transpile: no pattern decomposition registered for gate " + g.name +
                        (g.controls.empty() ? "" : " with controls"));
}

} // namespace detail

/// Circuit -> measurement pattern via the J(alpha) = H Rz(alpha) primitive:
/// each J adds one node (N, E, M at angle -alpha, X correction), CZ passes
/// through as an edge. The result is a wild pattern: corrections stay
/// inline, standardize() absorbs them.
inline Pattern transpile(const qubit::Circuit &cir) {
    const int n = cir.nqubit();
    std::vector<int> inputs(n);
    for (int q = 0; q < n; ++q) inputs[q] = q;
    Pattern p(inputs);

    std::vector<detail::JOrCz> stream;
    for (const auto &g : cir.gates()) detail::lower_gate(stream, g);

    std::vector<int> cur = inputs;
    int next = n;
    for (const auto &op : stream) {
        if (op.is_cz) {
            p.e(cur[op.q], cur[op.q2]);
            continue;
        }
        const int fresh = next++;
        p.n(fresh);
        p.e(cur[op.q], fresh);
        p.m(cur[op.q], -op.angle);
        p.x(fresh, {cur[op.q]});
        cur[op.q] = fresh;
    }
    p.set_outputs(cur);
    return p;
}

} // namespace quasar::mbqc
