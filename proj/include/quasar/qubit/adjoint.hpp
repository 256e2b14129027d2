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

#include "quasar/qubit/circuit.hpp"

namespace quasar::qubit {

/// Gradients of the summed expectation value: one entry per trainable gate
/// parameter (circuit order) and one per encode slot (data order).
struct AdjointGradients {
    std::vector<double> param_grads;
    std::vector<double> data_grads;
};

namespace detail {

inline cvec observable_sum_applied(const cvec &psi, const Circuit &cir) {
    const int n = cir.nqubit();
    auto pauli = [](char c) {
        if (c == 'x') return gates::pauli_x();
        if (c == 'y') return gates::pauli_y();
        return gates::pauli_z();
    };
    cvec acc = cvec::Zero(psi.size());
    for (const auto &obs : cir.observables()) {
        cvec phi = psi;
        for (std::size_t i = 0; i < obs.wires.size(); ++i)
            apply_matrix_strided(phi, pauli(obs.basis[i]), {obs.wires[i]}, {}, n);
        acc += phi;
    }
    return acc;
}

} // namespace detail

/// Exact gradient of sum_i <O_i> via one forward state and one backward
/// adjoint state: O(#gates) gate applications total. Controlled parameters
/// differentiate only on the control-on subspace. Pure states only.
inline AdjointGradients adjoint_gradients(const Circuit &cir, const QubitState &init,
                                          const std::vector<double> &data = {}) {
    require(!init.is_mixed(), "adjoint_gradients: pure states only");
    require(init.batch() == 1, "adjoint_gradients: one batch row at a time");
    require(static_cast<int>(data.size()) == cir.encode_slots(),
            "adjoint_gradients: data length != encode slots");
    const int n = cir.nqubit();

    // Bind encoded parameters and remember which gradient bucket each
    // differentiable parameter belongs to.
    struct Bound {
        Gate gate;
        int param_base = -1; // index into param_grads, or -1
        int data_base = -1;  // index into data_grads, or -1
    };
    std::vector<Bound> bound;
    int nparams = 0, nslots = 0;
    std::size_t cursor = 0;
    for (const auto &g : cir.gates()) {
        Bound b;
        b.gate = g;
        if (g.encode) {
            b.data_base = nslots;
            for (auto &p : b.gate.params) p = data[cursor++];
            nslots += g.num_params();
        } else if (g.trainable) {
            b.param_base = nparams;
            nparams += g.num_params();
        }
        bound.push_back(std::move(b));
    }

    cvec psi = init.amplitudes(0);
    for (const auto &b : bound)
        detail::apply_matrix_strided(psi, gate_matrix(b.gate), b.gate.wires, b.gate.controls, n);
    cvec lambda = detail::observable_sum_applied(psi, cir);

    AdjointGradients out;
    out.param_grads.assign(nparams, 0.0);
    out.data_grads.assign(nslots, 0.0);

    for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
        const Gate &g = it->gate;
        const cmat m = gate_matrix(g);
        detail::apply_matrix_strided(psi, m.adjoint(), g.wires, g.controls, n);
        if (it->param_base >= 0 || it->data_base >= 0) {
            for (int p = 0; p < g.num_params(); ++p) {
                cvec mu = psi;
                detail::apply_matrix_strided(mu, gate_dmatrix(g, p), g.wires, g.controls, n,
                                             /*zero_off_control=*/true);
                const double grad = 2.0 * lambda.dot(mu).real();
                if (it->param_base >= 0) out.param_grads[it->param_base + p] = grad;
                if (it->data_base >= 0) out.data_grads[it->data_base + p] = grad;
            }
        }
        detail::apply_matrix_strided(lambda, m.adjoint(), g.wires, g.controls, n);
    }
    return out;
}

} // namespace quasar::qubit
