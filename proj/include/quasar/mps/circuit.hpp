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

#include "quasar/mps/mps.hpp"
#include "quasar/photonic/fock_tensor.hpp"
#include "quasar/qubit/circuit.hpp"

namespace quasar::mps {

namespace detail {

/// Swaps the two physical indices of a (d^2 x d^2) two-site matrix.
inline cmat permute_two_site(const cmat &u, int d) {
    cmat out(d * d, d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e) out(b * d + a, e * d + c) = u(a * d + b, c * d + e);
    return out;
}

inline cmat swap_matrix(int d) {
    cmat s = cmat::Zero(d * d, d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) s(b * d + a, a * d + b) = 1.0;
    return s;
}

/// Two-site matrix of a qubit gate with up to one control; index order is
/// (first wire, second wire) most-significant first.
inline cmat qubit_two_site_matrix(const qubit::Gate &g) {
    using qubit::gate_matrix;
    if (g.controls.empty()) return gate_matrix(g); // swap/rxx/ryy/rzz
    const cmat u = gate_matrix(g); // 2x2 target matrix
    cmat out = cmat::Identity(4, 4);
    // order (control, target): control = most significant
    out.block(2, 2, 2, 2) = u;
    return out;
}

} // namespace detail

/// Applies a qubit gate to the MPS. Non-adjacent two-qubit gates route
/// through a transparent swap network: 2(|a - b| - 1) swaps total, each an
/// SVD-truncated two-site application.
inline void apply_gate_mps(MPSState &state, const qubit::Gate &g) {
    require(state.phys_dim() == 2, "apply_gate_mps: qubit gates need phys_dim 2");
    require(g.controls.size() <= 1, "apply_gate_mps: at most one control supported");
    if (g.controls.empty() && g.wires.size() == 1) {
        state.apply_1site(g.wires[0], qubit::gate_matrix(g));
        return;
    }
    int a, b; // a: first logical index of the matrix, b: second
    cmat u;
    if (!g.controls.empty()) {
        a = g.controls[0];
        b = g.wires[0];
        u = detail::qubit_two_site_matrix(g);
    } else {
        require(g.wires.size() == 2, "apply_gate_mps: unsupported gate arity");
        a = g.wires[0];
        b = g.wires[1];
        u = detail::qubit_two_site_matrix(g);
    }
    require(a != b, "apply_gate_mps: coincident wires");

    int lo = std::min(a, b), hi = std::max(a, b);
    if (a > b) u = detail::permute_two_site(u, 2); // orient (lo, hi)

    const cmat swp = detail::swap_matrix(2);
    // bring hi next to lo, apply, restore
    for (int s = hi - 1; s > lo; --s) state.apply_2site(s, swp);
    state.apply_2site(lo, u);
    for (int s = lo + 1; s < hi; ++s) state.apply_2site(s, swp);
}

inline MPSState run_circuit_mps(const qubit::Circuit &cir, int chi) {
    MPSState state = MPSState::product(std::vector<int>(cir.nqubit(), 0), 2, chi);
    for (const auto &g : cir.gates()) apply_gate_mps(state, g);
    return state;
}

/// <O> for a Pauli string on one site or two adjacent sites, normalized by
/// the (possibly truncated) state norm.
inline double expectation_local(MPSState &state, const qubit::Observable &obs) {
    auto pauli = [](char c) -> cmat {
        if (c == 'x') return qubit::gates::pauli_x();
        if (c == 'y') return qubit::gates::pauli_y();
        return qubit::gates::pauli_z();
    };
    require(!obs.wires.empty() && obs.wires.size() <= 2, "expectation_local: 1 or 2 sites");
    const int k = obs.wires[0];
    if (obs.wires.size() == 1) {
        state.move_center(k);
        const SiteTensor &t = state.site(k);
        const cmat op = pauli(obs.basis[0]);
        cdouble num(0, 0), den(0, 0);
        for (int a = 0; a < t.left; ++a)
            for (int b = 0; b < t.right; ++b)
                for (int s1 = 0; s1 < 2; ++s1) {
                    den += std::conj(t.at(a, s1, b)) * t.at(a, s1, b);
                    for (int s2 = 0; s2 < 2; ++s2)
                        num += std::conj(t.at(a, s1, b)) * op(s1, s2) * t.at(a, s2, b);
                }
        return num.real() / den.real();
    }
    require(obs.wires[1] == k + 1, "expectation_local: sites must be adjacent");
    state.move_center(k);
    const SiteTensor &l = state.site(k);
    const SiteTensor &r = state.site(k + 1);
    const cmat op1 = pauli(obs.basis[0]), op2 = pauli(obs.basis[1]);
    cdouble num(0, 0), den(0, 0);
    std::vector<cdouble> theta(4);
    for (int a = 0; a < l.left; ++a)
        for (int b = 0; b < r.right; ++b) {
            for (int s1 = 0; s1 < 2; ++s1)
                for (int s2 = 0; s2 < 2; ++s2) {
                    cdouble th(0, 0);
                    for (int m = 0; m < l.right; ++m) th += l.at(a, s1, m) * r.at(m, s2, b);
                    theta[s1 * 2 + s2] = th;
                }
            for (int s1 = 0; s1 < 2; ++s1)
                for (int s2 = 0; s2 < 2; ++s2) {
                    den += std::norm(theta[s1 * 2 + s2]);
                    cdouble acted(0, 0);
                    for (int t1 = 0; t1 < 2; ++t1)
                        for (int t2 = 0; t2 < 2; ++t2)
                            acted += op1(s1, t1) * op2(s2, t2) * theta[t1 * 2 + t2];
                    num += std::conj(theta[s1 * 2 + s2]) * acted;
                }
        }
    return num.real() / den.real();
}

/// One second-order Trotter step for the transverse-field Ising ring:
/// half X layer, even ZZ bonds, odd ZZ bonds, the ring-closing bond, and
/// the second half X layer.
inline void tfim_trotter_step(MPSState &state, double j_coupling, double h_field, double dt) {
    const int n = state.nsite();
    auto rx = [&](int w) {
        qubit::Gate g = qubit::make_gate("rx", {w}, {}, {h_field * dt});
        apply_gate_mps(state, g);
    };
    auto rzz = [&](int a, int b) {
        qubit::Gate g = qubit::make_gate("rzz", {a, b}, {}, {2.0 * j_coupling * dt});
        apply_gate_mps(state, g);
    };
    for (int i = 0; i < n; ++i) rx(i);
    for (int i = 0; i + 1 < n; i += 2) rzz(i, i + 1);
    for (int i = 1; i + 1 < n; i += 2) rzz(i, i + 1);
    if (n > 2) rzz(n - 1, 0);
    for (int i = 0; i < n; ++i) rx(i);
}

/// Average X magnetization over all sites.
inline double average_x_magnetization(MPSState &state) {
    double total = 0.0;
    for (int i = 0; i < state.nsite(); ++i)
        total += expectation_local(state, {{i}, "x"});
    return total / state.nsite();
}

/// Dense two-site matrix of a photon-conserving two-mode gate at the given
/// cutoff, for Fock-space MPS runs.
inline cmat fock_two_site_matrix(const photonic::PhotonicGate &g, int cutoff) {
    const cmat u = photonic::two_mode_unitary(g);
    const auto blocks = photonic::detail::two_mode_blocks(u, 2 * (cutoff - 1));
    cmat out = cmat::Zero(cutoff * cutoff, cutoff * cutoff);
    for (int n = 0; n < static_cast<int>(blocks.size()); ++n) {
        const int jlo = std::max(0, n - (cutoff - 1));
        const int jhi = std::min(n, cutoff - 1);
        for (int i = jlo; i <= jhi; ++i)
            for (int j = jlo; j <= jhi; ++j)
                out(i * cutoff + (n - i), j * cutoff + (n - j)) = blocks[n](i, j);
    }
    return out;
}

/// Beam-splitter chain on a Fock MPS (adjacent pairs only).
inline void apply_fock_gate_mps(MPSState &state, const photonic::PhotonicGate &g) {
    const int d = state.phys_dim();
    if (g.wires.size() == 1) {
        state.apply_1site(g.wires[0], photonic::detail::single_mode_matrix(g, d));
        return;
    }
    require(g.wires.size() == 2 && g.wires[1] == g.wires[0] + 1,
            "apply_fock_gate_mps: adjacent two-mode gates only");
    state.apply_2site(g.wires[0], fock_two_site_matrix(g, d));
}

} // namespace quasar::mps
