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

#include "quasar/qubit/gate.hpp"

namespace quasar::qubit {

/// Wire 0 is the most significant bit of a basis index: |q0 q1 ... q_{n-1}>.
inline int bit_of(std::uint64_t idx, int wire, int nqubit) {
    return static_cast<int>((idx >> (nqubit - 1 - wire)) & 1ull);
}

/// Dense n-qubit state: a batch of pure state vectors, or of density
/// matrices once a channel has been applied. Value type; operations return
/// new states.
class QubitState {
  public:
    QubitState() = default;

    /// |basis_index> on n qubits.
    static QubitState basis(int nqubit, std::uint64_t index = 0, int batch = 1) {
        require(nqubit >= 1 && nqubit <= 30, "QubitState: nqubit out of range");
        require(index < (1ull << nqubit), "QubitState: basis index out of range");
        QubitState s;
        s.nqubit_ = nqubit;
        s.pure_.assign(batch, cvec::Zero(1ll << nqubit));
        for (auto &v : s.pure_) v(static_cast<long>(index)) = 1.0;
        return s;
    }

    static QubitState from_amplitudes(int nqubit, cvec amps) {
        require(amps.size() == (1ll << nqubit), "QubitState: amplitude length mismatch");
        require(std::abs(amps.squaredNorm() - 1.0) < 1e-10, "QubitState: not normalized");
        QubitState s;
        s.nqubit_ = nqubit;
        s.pure_.push_back(std::move(amps));
        return s;
    }

    static QubitState from_density(int nqubit, cmat rho) {
        const long dim = 1ll << nqubit;
        require(rho.rows() == dim && rho.cols() == dim, "QubitState: density shape mismatch");
        require((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-9, "QubitState: rho not Hermitian");
        require(std::abs(rho.trace().real() - 1.0) < 1e-10, "QubitState: trace != 1");
        QubitState s;
        s.nqubit_ = nqubit;
        s.mixed_.push_back(std::move(rho));
        return s;
    }

    int nqubit() const { return nqubit_; }
    bool is_mixed() const { return !mixed_.empty(); }
    std::size_t batch() const { return is_mixed() ? mixed_.size() : pure_.size(); }

    const cvec &amplitudes(std::size_t b = 0) const { return pure_.at(b); }
    cvec &amplitudes(std::size_t b = 0) { return pure_.at(b); }
    const cmat &density(std::size_t b = 0) const { return mixed_.at(b); }
    cmat &density(std::size_t b = 0) { return mixed_.at(b); }

    /// Pure -> density matrix promotion (no-op when already mixed).
    QubitState to_mixed() const {
        if (is_mixed()) return *this;
        QubitState s;
        s.nqubit_ = nqubit_;
        for (const auto &v : pure_) s.mixed_.push_back(v * v.adjoint());
        return s;
    }

    void set_batch_pure(std::vector<cvec> vs) {
        pure_ = std::move(vs);
        mixed_.clear();
    }

  private:
    int nqubit_ = 0;
    std::vector<cvec> pure_;
    std::vector<cmat> mixed_;
};

namespace detail {

/// Offsets of the 2^k group members for target wires (wires[0] = local MSB).
inline std::vector<std::uint64_t> group_offsets(const std::vector<int> &wires, int nqubit) {
    const int k = static_cast<int>(wires.size());
    std::vector<std::uint64_t> bits(k);
    for (int i = 0; i < k; ++i) bits[i] = 1ull << (nqubit - 1 - wires[i]);
    std::vector<std::uint64_t> offsets(1ull << k, 0);
    for (std::uint64_t j = 0; j < offsets.size(); ++j)
        for (int i = 0; i < k; ++i)
            if ((j >> (k - 1 - i)) & 1ull) offsets[j] |= bits[i];
    return offsets;
}

/// In-place strided kernel: psi <- M psi on the target wires, restricted to
/// control-satisfied groups. With zero_off_control, components whose
/// controls are not all |1> are zeroed (used for controlled-gate parameter
/// derivatives, where d/dtheta kills the pass-through part).
inline void apply_matrix_strided(cvec &psi, const cmat &m, const std::vector<int> &wires,
                                 const std::vector<int> &controls, int nqubit,
                                 bool zero_off_control = false) {
    const int k = static_cast<int>(wires.size());
    require(m.rows() == (1 << k) && m.cols() == (1 << k), "gate matrix shape mismatch");
    for (int w : wires) require(w >= 0 && w < nqubit, "target wire out of range");
    for (int c : controls) require(c >= 0 && c < nqubit, "control wire out of range");

    std::uint64_t tmask = 0, cmask = 0;
    for (int w : wires) tmask |= 1ull << (nqubit - 1 - w);
    for (int c : controls) cmask |= 1ull << (nqubit - 1 - c);
    const auto offsets = group_offsets(wires, nqubit);
    const std::uint64_t dim = 1ull << nqubit;
    const std::uint64_t gsize = offsets.size();

    std::vector<cdouble> scratch(gsize);
    for (std::uint64_t base = 0; base < dim; ++base) {
        if (base & tmask) continue;
        if ((base & cmask) != cmask) {
            if (zero_off_control && (base & cmask) != cmask) {
                // zero the whole group only once (when visiting its base)
                for (std::uint64_t j = 0; j < gsize; ++j) psi(base + offsets[j]) = 0.0;
            }
            continue;
        }
        for (std::uint64_t j = 0; j < gsize; ++j) scratch[j] = psi(base + offsets[j]);
        for (std::uint64_t r = 0; r < gsize; ++r) {
            cdouble acc(0.0, 0.0);
            for (std::uint64_t c = 0; c < gsize; ++c) acc += m(r, c) * scratch[c];
            psi(base + offsets[r]) = acc;
        }
    }
}

} // namespace detail

/// Applies a gate to every batch element. Pure states use index striding;
/// mixed states conjugate the density matrix.
inline QubitState apply_gate(const QubitState &state, const Gate &g) {
    const int n = state.nqubit();
    const cmat m = gate_matrix(g);
    require(approx_unitary(m, 1e-10), "gate " + g.name + ": matrix not unitary");
    QubitState out = state;
    if (!state.is_mixed()) {
        for (std::size_t b = 0; b < out.batch(); ++b)
            detail::apply_matrix_strided(out.amplitudes(b), m, g.wires, g.controls, n);
        return out;
    }
    for (std::size_t b = 0; b < out.batch(); ++b) {
        cmat &rho = out.density(b);
        const long dim = rho.rows();
        for (long col = 0; col < dim; ++col) {
            cvec v = rho.col(col);
            detail::apply_matrix_strided(v, m, g.wires, g.controls, n);
            rho.col(col) = v;
        }
        for (long row = 0; row < dim; ++row) {
            cvec v = rho.row(row).transpose();
            detail::apply_matrix_strided(v, m.conjugate(), g.wires, g.controls, n);
            rho.row(row) = v.transpose();
        }
    }
    return out;
}

} // namespace quasar::qubit
