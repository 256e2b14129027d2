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

#include <map>

#include "quasar/qubit/state.hpp"
#include "quasar/rng.hpp"

namespace quasar::qubit {

/// Tensor product of single-qubit Paulis: one basis letter per wire.
struct Observable {
    std::vector<int> wires;
    std::string basis; // letters from {x, y, z}
};

struct MeasureEntry {
    std::uint64_t count = 0;
    double probability = 0.0;
};

/// Qubit circuit: an ordered gate list plus registered observables.
/// Parameters flagged `encode` are bound from a data vector at run time,
/// one slot per parameter, in circuit order; the data length must match the
/// slot count exactly.
class Circuit {
  public:
    explicit Circuit(int nqubit) : nqubit_(nqubit) {
        require(nqubit >= 1 && nqubit <= 30, "Circuit: nqubit out of range");
    }

    int nqubit() const { return nqubit_; }
    const std::vector<Gate> &gates() const { return gates_; }
    std::vector<Gate> &gates() { return gates_; }
    const std::vector<Observable> &observables() const { return observables_; }

    void add(Gate g) {
        for (int w : g.wires) require(w >= 0 && w < nqubit_, "gate wire out of range");
        for (int c : g.controls) require(c >= 0 && c < nqubit_, "control wire out of range");
        gates_.push_back(std::move(g));
    }

    // Convenience builders used all over the tests and demos.
    void h(int w) { add(make_gate("h", {w})); }
    void x(int w, std::vector<int> controls = {}) { add(make_gate("x", {w}, std::move(controls))); }
    void y(int w) { add(make_gate("y", {w})); }
    void z(int w) { add(make_gate("z", {w})); }
    void cnot(int control, int target) { add(make_gate("x", {target}, {control})); }
    void cz(int control, int target) { add(make_gate("z", {target}, {control})); }
    void cp(int control, int target, double theta) {
        add(make_gate("p", {target}, {control}, {theta}));
    }
    void swap(int a, int b) { add(make_gate("swap", {a, b})); }
    void rx(int w, double theta, bool trainable = false, bool encode = false) {
        add(make_gate("rx", {w}, {}, {theta}, trainable, encode));
    }
    void ry(int w, double theta, bool trainable = false, bool encode = false) {
        add(make_gate("ry", {w}, {}, {theta}, trainable, encode));
    }
    void rz(int w, double theta, bool trainable = false, bool encode = false) {
        add(make_gate("rz", {w}, {}, {theta}, trainable, encode));
    }
    void cry(int control, int target, double theta, bool trainable = false) {
        add(make_gate("ry", {target}, {control}, {theta}, trainable));
    }
    void rxx(int a, int b, double theta, bool trainable = false) {
        add(make_gate("rxx", {a, b}, {}, {theta}, trainable));
    }
    void ryy(int a, int b, double theta, bool trainable = false) {
        add(make_gate("ryy", {a, b}, {}, {theta}, trainable));
    }
    void rzz(int a, int b, double theta, bool trainable = false) {
        add(make_gate("rzz", {a, b}, {}, {theta}, trainable));
    }
    void rylayer(bool encode = false, std::vector<double> init = {}) {
        for (int w = 0; w < nqubit_; ++w)
            ry(w, init.empty() ? 0.0 : init[w], !encode, encode);
    }
    void cnot_ring() {
        for (int w = 0; w < nqubit_; ++w) cnot(w, (w + 1) % nqubit_);
    }

    void observable(std::vector<int> wires, std::string basis) {
        require(wires.size() == basis.size(), "observable: one basis letter per wire");
        for (char c : basis)
            require(c == 'x' || c == 'y' || c == 'z', "observable: basis letter outside {x,y,z}");
        observables_.push_back({std::move(wires), std::move(basis)});
    }

    int encode_slots() const {
        int n = 0;
        for (const auto &g : gates_)
            if (g.encode) n += g.num_params();
        return n;
    }

    std::vector<double *> trainable_params() {
        std::vector<double *> out;
        for (auto &g : gates_)
            if (g.trainable)
                for (auto &p : g.params) out.push_back(&p);
        return out;
    }

    /// Runs the circuit on `init` (default |0...0>). Each row of `data`
    /// produces one batch element; parameters are shared across the batch,
    /// only encoded data varies per row.
    QubitState forward(const QubitState &init,
                       const std::vector<std::vector<double>> &data = {}) const {
        const int slots = encode_slots();
        if (data.empty()) {
            require(slots == 0, "circuit has encode slots but no data given");
            QubitState s = init;
            for (const auto &g : gates_) s = apply_gate(s, g);
            return s;
        }
        require(init.batch() == 1, "encoded runs broadcast a single initial state");
        require(!init.is_mixed(), "encoded batch runs expect a pure initial state");
        std::vector<cvec> rows;
        for (const auto &row : data) {
            require(static_cast<int>(row.size()) == slots,
                    "data length " + std::to_string(row.size()) + " != encode slots " +
                        std::to_string(slots));
            QubitState s = QubitState::from_amplitudes(nqubit_, init.amplitudes(0));
            std::size_t cursor = 0;
            for (const auto &g : gates_) {
                if (!g.encode) {
                    s = apply_gate(s, g);
                    continue;
                }
                Gate bound = g;
                for (auto &p : bound.params) p = row[cursor++];
                s = apply_gate(s, bound);
            }
            rows.push_back(s.amplitudes(0));
        }
        QubitState out = init;
        out.set_batch_pure(std::move(rows));
        return out;
    }

    QubitState forward(const std::vector<std::vector<double>> &data = {}) const {
        return forward(QubitState::basis(nqubit_), data);
    }

  private:
    int nqubit_ = 1;
    std::vector<Gate> gates_;
    std::vector<Observable> observables_;
};

/// Quantum Fourier transform: per block a Hadamard followed by controlled
/// phases cp(i+1, n, pi/2^(k-1)) climbing the register.
inline Circuit qft_circuit(int nqubit) {
    Circuit cir(nqubit);
    for (int n = 0; n < nqubit; ++n) {
        cir.h(n);
        int k = 2;
        for (int i = n; i < nqubit - 1; ++i) {
            cir.cp(i + 1, n, kPi / std::pow(2.0, k - 1));
            ++k;
        }
    }
    return cir;
}

/// Exact marginal Born probabilities on a wire subset, indexed by the
/// outcome bits in wire-list order.
inline std::vector<double> marginal_probabilities(const QubitState &state,
                                                  const std::vector<int> &wires,
                                                  std::size_t batch_index = 0) {
    require(!wires.empty(), "measure: empty wire list");
    const int n = state.nqubit();
    const int k = static_cast<int>(wires.size());
    std::vector<double> probs(1ull << k, 0.0);
    const std::uint64_t dim = 1ull << n;
    auto outcome_of = [&](std::uint64_t idx) {
        std::uint64_t o = 0;
        for (int i = 0; i < k; ++i) o = (o << 1) | bit_of(idx, wires[i], n);
        return o;
    };
    if (!state.is_mixed()) {
        const cvec &psi = state.amplitudes(batch_index);
        for (std::uint64_t idx = 0; idx < dim; ++idx)
            probs[outcome_of(idx)] += std::norm(psi(idx));
    } else {
        const cmat &rho = state.density(batch_index);
        for (std::uint64_t idx = 0; idx < dim; ++idx)
            probs[outcome_of(idx)] += rho(idx, idx).real();
    }
    return probs;
}

inline std::string bits_to_string(std::uint64_t outcome, int k) {
    std::string s(k, '0');
    for (int i = 0; i < k; ++i)
        if ((outcome >> (k - 1 - i)) & 1ull) s[i] = '1';
    return s;
}

/// Multinomial sampling from the marginal distribution; exact probabilities
/// are attached when with_prob is set. Outcomes that never occur and have
/// zero probability are omitted.
inline std::map<std::string, MeasureEntry> measure(const QubitState &state, int shots,
                                                   const std::vector<int> &wires, Rng &rng,
                                                   bool with_prob = false,
                                                   std::size_t batch_index = 0) {
    require(shots >= 1, "measure: shots must be >= 1");
    const auto probs = marginal_probabilities(state, wires, batch_index);
    const int k = static_cast<int>(wires.size());
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    std::map<std::string, MeasureEntry> out;
    for (int s = 0; s < shots; ++s) {
        const double u = rng.uniform() * acc;
        const std::size_t idx =
            std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
        out[bits_to_string(std::min(idx, probs.size() - 1), k)].count += 1;
    }
    if (with_prob) {
        for (std::size_t i = 0; i < probs.size(); ++i) {
            if (probs[i] <= 0 && out.find(bits_to_string(i, k)) == out.end()) continue;
            out[bits_to_string(i, k)].probability = probs[i];
        }
    }
    return out;
}

/// <psi| P |psi> (or Tr[rho P]) for a Pauli-string observable; the
/// imaginary residue is checked below 1e-10 and dropped.
inline double expectation_one(const QubitState &state, const Observable &obs,
                              std::size_t batch_index = 0) {
    const int n = state.nqubit();
    auto pauli = [](char c) {
        if (c == 'x') return gates::pauli_x();
        if (c == 'y') return gates::pauli_y();
        return gates::pauli_z();
    };
    if (!state.is_mixed()) {
        cvec phi = state.amplitudes(batch_index);
        for (std::size_t i = 0; i < obs.wires.size(); ++i)
            detail::apply_matrix_strided(phi, pauli(obs.basis[i]), {obs.wires[i]}, {}, n);
        const cdouble val = state.amplitudes(batch_index).dot(phi);
        require(std::abs(val.imag()) < 1e-10, "expectation: imaginary residue");
        return val.real();
    }
    cmat rho = state.density(batch_index);
    const long dim = rho.rows();
    for (long col = 0; col < dim; ++col) {
        cvec v = rho.col(col);
        for (std::size_t i = 0; i < obs.wires.size(); ++i)
            detail::apply_matrix_strided(v, pauli(obs.basis[i]), {obs.wires[i]}, {}, n);
        rho.col(col) = v;
    }
    const cdouble val = rho.trace();
    require(std::abs(val.imag()) < 1e-10, "expectation: imaginary residue");
    return val.real();
}

inline std::vector<double> expectation(const QubitState &state, const Circuit &cir,
                                       std::size_t batch_index = 0) {
    std::vector<double> out;
    for (const auto &obs : cir.observables()) out.push_back(expectation_one(state, obs, batch_index));
    return out;
}

} // namespace quasar::qubit
