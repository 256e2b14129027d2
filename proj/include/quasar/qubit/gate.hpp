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

#include <algorithm>
#include <optional>

#include "quasar/core.hpp"

namespace quasar::qubit {

/// One circuit operation: a named gate on target wires, optionally
/// controlled, with angle parameters. `encode` marks parameters supplied at
/// run time from the data vector; `trainable` marks parameters that
/// participate in gradients.
struct Gate {
    std::string name;
    std::vector<int> wires;    // targets; wires[0] is the local MSB
    std::vector<int> controls; // all must be |1> for the gate to act
    std::vector<double> params;
    bool trainable = false;
    bool encode = false;
    std::optional<cmat> custom; // explicit matrix for name == "custom"

    int num_params() const { return static_cast<int>(params.size()); }
};

namespace gates {

inline cmat pauli_x() {
    cmat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
inline cmat pauli_y() {
    cmat m(2, 2);
    m << cdouble(0, 0), cdouble(0, -1), cdouble(0, 1), cdouble(0, 0);
    return m;
}
inline cmat pauli_z() {
    cmat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
inline cmat hadamard() {
    cmat m(2, 2);
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}

inline cmat rot(const cmat &generator, double theta) {
    // exp(-i theta G / 2) for an involutory generator G.
    const int d = static_cast<int>(generator.rows());
    return std::cos(theta / 2) * cmat::Identity(d, d) -
           cdouble(0, 1) * std::sin(theta / 2) * generator;
}

inline cmat u3(double theta, double phi, double lam) {
    cmat m(2, 2);
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    m << c, -std::exp(cdouble(0, lam)) * s, std::exp(cdouble(0, phi)) * s,
        std::exp(cdouble(0, phi + lam)) * c;
    return m;
}

inline cmat kron(const cmat &a, const cmat &b) {
    cmat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

} // namespace gates

/// Matrix on the gate's target wires (controls are handled by the kernel).
inline cmat gate_matrix(const Gate &g) {
    using namespace gates;
    const auto &p = g.params;
    auto need = [&](std::size_t k) {
        require(p.size() == k, "gate " + g.name + ": expected " + std::to_string(k) + " params");
    };
    if (g.name == "x") return pauli_x();
    if (g.name == "y") return pauli_y();
    if (g.name == "z") return pauli_z();
    if (g.name == "h") return hadamard();
    if (g.name == "s") {
        cmat m(2, 2);
        m << 1, 0, 0, cdouble(0, 1);
        return m;
    }
    if (g.name == "t") {
        cmat m(2, 2);
        m << 1, 0, 0, std::exp(cdouble(0, kPi / 4));
        return m;
    }
    if (g.name == "rx") {
        need(1);
        return rot(pauli_x(), p[0]);
    }
    if (g.name == "ry") {
        need(1);
        return rot(pauli_y(), p[0]);
    }
    if (g.name == "rz") {
        need(1);
        return rot(pauli_z(), p[0]);
    }
    if (g.name == "p") {
        need(1);
        cmat m(2, 2);
        m << 1, 0, 0, std::exp(cdouble(0, p[0]));
        return m;
    }
    if (g.name == "u3") {
        need(3);
        return u3(p[0], p[1], p[2]);
    }
    if (g.name == "swap") {
        cmat m = cmat::Zero(4, 4);
        m(0, 0) = m(3, 3) = m(1, 2) = m(2, 1) = 1;
        return m;
    }
    if (g.name == "rxx") {
        need(1);
        return rot(kron(pauli_x(), pauli_x()), p[0]);
    }
    if (g.name == "ryy") {
        need(1);
        return rot(kron(pauli_y(), pauli_y()), p[0]);
    }
    if (g.name == "rzz") {
        need(1);
        return rot(kron(pauli_z(), pauli_z()), p[0]);
    }
    if (g.name == "custom") {
        require(g.custom.has_value(), "custom gate without matrix");
        require(approx_unitary(*g.custom, 1e-10), "custom gate matrix not unitary");
        return *g.custom;
    }
    throw invalid_input("unknown gate: " + g.name);
}

/// d(matrix)/d(params[which]).
inline cmat gate_dmatrix(const Gate &g, int which) {
    using namespace gates;
    const auto &p = g.params;
    auto drot = [&](const cmat &gen, double theta) {
        const int d = static_cast<int>(gen.rows());
        return -0.5 * std::sin(theta / 2) * cmat::Identity(d, d) -
               cdouble(0, 0.5) * std::cos(theta / 2) * gen;
    };
    if (g.name == "rx") return drot(pauli_x(), p[0]);
    if (g.name == "ry") return drot(pauli_y(), p[0]);
    if (g.name == "rz") return drot(pauli_z(), p[0]);
    if (g.name == "rxx") return drot(kron(pauli_x(), pauli_x()), p[0]);
    if (g.name == "ryy") return drot(kron(pauli_y(), pauli_y()), p[0]);
    if (g.name == "rzz") return drot(kron(pauli_z(), pauli_z()), p[0]);
    if (g.name == "p") {
        cmat m = cmat::Zero(2, 2);
        m(1, 1) = cdouble(0, 1) * std::exp(cdouble(0, p[0]));
        return m;
    }
    if (g.name == "u3") {
        const double c = std::cos(p[0] / 2), s = std::sin(p[0] / 2);
        const cdouble el = std::exp(cdouble(0, p[2])), ef = std::exp(cdouble(0, p[1]));
        cmat m(2, 2);
        if (which == 0) {
            m << -0.5 * s, -0.5 * el * c, 0.5 * ef * c, -0.5 * ef * el * s;
        } else if (which == 1) {
            m << 0, 0, cdouble(0, 1) * ef * s, cdouble(0, 1) * ef * el * c;
        } else {
            m << 0, -cdouble(0, 1) * el * s, 0, cdouble(0, 1) * ef * el * c;
        }
        return m;
    }
    throw invalid_input("gate " + g.name + " has no parameter derivative");
}

// Sugar constructors mirroring common circuit-building calls.
inline Gate make_gate(std::string name, std::vector<int> wires, std::vector<int> controls = {},
                      std::vector<double> params = {}, bool trainable = false,
                      bool encode = false) {
    Gate g;
    g.name = std::move(name);
    g.wires = std::move(wires);
    g.controls = std::move(controls);
    g.params = std::move(params);
    g.trainable = trainable;
    g.encode = encode;
    for (int w : g.wires)
        require(std::find(g.controls.begin(), g.controls.end(), w) == g.controls.end(),
                "gate wires and controls must be disjoint");
    return g;
}

} // namespace quasar::qubit
