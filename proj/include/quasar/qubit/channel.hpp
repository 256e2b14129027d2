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

#include "quasar/qubit/state.hpp"

namespace quasar::qubit {

/// Single-qubit channel as a Kraus set; sum_i K_i^dagger K_i = I within
/// 1e-10 is enforced on construction.
struct Channel {
    std::string name;
    int wire = 0;
    std::vector<cmat> kraus;
};

inline Channel make_channel(std::string name, int wire, std::vector<cmat> kraus) {
    cmat acc = cmat::Zero(2, 2);
    for (const auto &k : kraus) {
        require(k.rows() == 2 && k.cols() == 2, "channel: Kraus operators must be 2x2");
        acc += k.adjoint() * k;
    }
    require((acc - cmat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10,
            "channel: Kraus set not trace preserving");
    return {std::move(name), wire, std::move(kraus)};
}

inline Channel bit_flip(int wire, double p) {
    return make_channel("bit_flip", wire,
                        {std::sqrt(1 - p) * cmat::Identity(2, 2), std::sqrt(p) * gates::pauli_x()});
}

inline Channel phase_flip(int wire, double p) {
    return make_channel("phase_flip", wire,
                        {std::sqrt(1 - p) * cmat::Identity(2, 2), std::sqrt(p) * gates::pauli_z()});
}

inline Channel depolarizing(int wire, double p) {
    return make_channel("depolarizing", wire,
                        {std::sqrt(1 - 3.0 * p / 4.0) * cmat::Identity(2, 2),
                         std::sqrt(p / 4.0) * gates::pauli_x(), std::sqrt(p / 4.0) * gates::pauli_y(),
                         std::sqrt(p / 4.0) * gates::pauli_z()});
}

inline Channel amplitude_damping(int wire, double gamma) {
    cmat k0(2, 2), k1(2, 2);
    k0 << 1, 0, 0, std::sqrt(1 - gamma);
    k1 << 0, std::sqrt(gamma), 0, 0;
    return make_channel("amplitude_damping", wire, {k0, k1});
}

inline Channel phase_damping(int wire, double lambda) {
    cmat k0(2, 2), k1(2, 2);
    k0 << 1, 0, 0, std::sqrt(1 - lambda);
    k1 << 0, 0, 0, std::sqrt(lambda);
    return make_channel("phase_damping", wire, {k0, k1});
}

/// rho' = sum_i K_i rho K_i^dagger. Pure states are promoted to density
/// matrices first.
inline QubitState apply_channel(const QubitState &state, const Channel &ch) {
    QubitState mixed = state.to_mixed();
    const int n = mixed.nqubit();
    QubitState out = mixed;
    for (std::size_t b = 0; b < mixed.batch(); ++b) {
        const cmat &rho = mixed.density(b);
        const long dim = rho.rows();
        cmat next = cmat::Zero(dim, dim);
        for (const auto &k : ch.kraus) {
            cmat term = rho;
            for (long col = 0; col < dim; ++col) {
                cvec v = term.col(col);
                detail::apply_matrix_strided(v, k, {ch.wire}, {}, n);
                term.col(col) = v;
            }
            for (long row = 0; row < dim; ++row) {
                cvec v = term.row(row).transpose();
                detail::apply_matrix_strided(v, k.conjugate(), {ch.wire}, {}, n);
                term.row(row) = v.transpose();
            }
            next += term;
        }
        const double tr = next.trace().real();
        require(std::abs(tr - 1.0) < 1e-10, "channel: trace not preserved");
        out.density(b) = next;
    }
    return out;
}

} // namespace quasar::qubit
