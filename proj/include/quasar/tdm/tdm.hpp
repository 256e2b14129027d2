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

#include "quasar/photonic/gaussian.hpp"

namespace quasar::tdm {

using photonic::GaussianState;
using photonic::PhotonicGate;

// A delay loop is a PhotonicGate with name "delay": wires[0] is the coupled
// spatial wire, ntau the number of qumodes stored concurrently, params the
// (BS angle theta, loop phase phi) pair, possibly encoded per step. At each
// step the oldest stored qumode interferes with the incoming pulse on a
// beam splitter bs(theta, 0); the port that stays in the loop picks up the
// phase phi and re-enters the queue. theta = pi/2 swaps the pulse fully
// into the loop (a pure delay line).

inline PhotonicGate delay(int wire, int ntau, std::vector<double> params, bool encode = false) {
    PhotonicGate g = photonic::pgate("delay", {wire}, std::move(params), encode);
    g.ntau = ntau;
    require(g.ntau >= 1, "delay: ntau >= 1");
    require(g.params.size() == 2, "delay: params are [theta, phi]");
    return g;
}

/// Time-multiplexed program over a small set of spatial modes. All spatial
/// modes are measured (homodyne) once per step; encoded parameters are bound
/// per step from the data rows, cycling when fewer rows than steps are given
/// (early rows can hold a differing swap-out step).
struct TDMProgram {
    int nmode = 0;
    double hbar = 2.0;
    std::vector<PhotonicGate> ops;
    std::vector<int> measure_wires;
    std::vector<double> measure_phis;

    int encode_slots() const {
        int n = 0;
        for (const auto &g : ops)
            if (g.encode) n += static_cast<int>(g.params.size());
        return n;
    }

    void validate() const {
        require(nmode >= 1, "tdm: nmode >= 1");
        require(measure_wires.size() == measure_phis.size(), "tdm: measurement spec mismatch");
        std::vector<bool> seen(nmode, false);
        for (int w : measure_wires) {
            require(w >= 0 && w < nmode, "tdm: measured wire out of range");
            seen[w] = true;
        }
        for (int w = 0; w < nmode; ++w)
            require(seen[w], "tdm: spatial wire " + std::to_string(w) + " is unmeasured");
        for (const auto &g : ops)
            if (g.name != "delay")
                require(photonic::is_linear_optical(g.name) || g.name == "s" || g.name == "d",
                        "tdm: non-Gaussian op " + g.name);
    }
};

namespace detail {

/// Binds one step's encoded parameters from the cycling data rows.
inline std::vector<PhotonicGate> bind_step(const TDMProgram &prog,
                                           const std::vector<std::vector<double>> &data,
                                           int step) {
    std::vector<PhotonicGate> out;
    const int slots = prog.encode_slots();
    const std::vector<double> *row = nullptr;
    if (slots > 0) {
        require(!data.empty(), "tdm: program has encoded parameters but no data");
        row = &data[step % data.size()];
        require(static_cast<int>(row->size()) == slots,
                "tdm: data row length != encoded parameter count");
    }
    std::size_t cursor = 0;
    for (const auto &g : prog.ops) {
        PhotonicGate bound = g;
        if (g.encode)
            for (auto &p : bound.params) p = (*row)[cursor++];
        out.push_back(std::move(bound));
    }
    return out;
}

} // namespace detail

/// The equivalent spatial circuit: one fresh mode per spatial wire per step
/// (step k wire w -> mode k*nmode + w), plus one block of ntau loop modes
/// per delay at the end. Each delay becomes a chain of BS couplings against
/// its rotating loop block; measurements happen in step order.
struct UnrolledCircuit {
    int total_modes = 0;
    int nstep = 0;
    int nmode = 0;
    std::vector<PhotonicGate> gates;
    std::vector<std::vector<int>> measure_groups; // per step: unrolled indices
    std::vector<std::vector<double>> measure_phis;
};

inline UnrolledCircuit unroll(const TDMProgram &prog, int nstep,
                              const std::vector<std::vector<double>> &data = {}) {
    prog.validate();
    require(nstep >= 1, "unroll: nstep >= 1");
    UnrolledCircuit out;
    out.nstep = nstep;
    out.nmode = prog.nmode;

    int next_block = prog.nmode * nstep;
    std::vector<std::vector<int>> queues; // one per delay op, order of appearance
    for (const auto &g : prog.ops)
        if (g.name == "delay") {
            std::vector<int> q(g.ntau);
            for (int i = 0; i < g.ntau; ++i) q[i] = next_block + i;
            next_block += g.ntau;
            queues.push_back(std::move(q));
        }
    out.total_modes = next_block;

    for (int step = 0; step < nstep; ++step) {
        const auto bound = detail::bind_step(prog, data, step);
        std::size_t delay_index = 0;
        for (const auto &g : bound) {
            if (g.name == "delay") {
                auto &q = queues[delay_index++];
                const int stored = q.front();
                const int cur = step * prog.nmode + g.wires[0];
                out.gates.push_back(photonic::pgate("bs", {stored, cur}, {g.params[0], 0.0}));
                if (g.params[1] != 0.0)
                    out.gates.push_back(photonic::pgate("ps", {stored}, {g.params[1]}));
                q.erase(q.begin());
                q.push_back(stored);
                continue;
            }
            PhotonicGate emitted = g;
            for (auto &w : emitted.wires) w = step * prog.nmode + w;
            out.gates.push_back(std::move(emitted));
        }
        std::vector<int> group;
        for (int w : prog.measure_wires) group.push_back(step * prog.nmode + w);
        out.measure_groups.push_back(group);
        out.measure_phis.push_back(prog.measure_phis);
    }
    return out;
}

struct TdmRun {
    rmat samples; // nstep rows, one column per measured wire
    GaussianState final_state;
};

/// Multi-step evolution carrying the loop-internal modes across steps. Each
/// step applies the bound ops, then jointly homodynes the spatial wires;
/// conditioning resets them to vacuum for the next pulse train.
inline TdmRun run_tdm(const TDMProgram &prog, int nstep,
                      const std::vector<std::vector<double>> &data, Rng &rng) {
    prog.validate();
    require(nstep >= 1, "run_tdm: nstep >= 1");
    int total = prog.nmode;
    std::vector<std::vector<int>> queues;
    for (const auto &g : prog.ops)
        if (g.name == "delay") {
            std::vector<int> q(g.ntau);
            for (int i = 0; i < g.ntau; ++i) q[i] = total + i;
            total += g.ntau;
            queues.push_back(std::move(q));
        }

    GaussianState state = GaussianState::vacuum(total, prog.hbar);
    TdmRun out;
    out.samples.resize(nstep, prog.measure_wires.size());

    for (int step = 0; step < nstep; ++step) {
        const auto bound = detail::bind_step(prog, data, step);
        std::size_t delay_index = 0;
        for (const auto &g : bound) {
            if (g.name == "delay") {
                auto &q = queues[delay_index++];
                const int stored = q.front();
                const int cur = g.wires[0];
                state = evolve(state, photonic::symplectic_of(
                                          photonic::pgate("bs", {stored, cur}, {g.params[0], 0.0}),
                                          total, prog.hbar));
                if (g.params[1] != 0.0)
                    state = evolve(state, photonic::symplectic_of(
                                              photonic::pgate("ps", {stored}, {g.params[1]}),
                                              total, prog.hbar));
                q.erase(q.begin());
                q.push_back(stored);
                continue;
            }
            state = evolve(state, photonic::symplectic_of(g, total, prog.hbar));
        }
        auto meas = photonic::measure_homodyne(state, prog.measure_wires, prog.measure_phis, rng);
        for (int i = 0; i < meas.samples.size(); ++i) out.samples(step, i) = meas.samples(i);
        state = meas.state;
    }
    out.final_state = state;
    return out;
}

/// Samples the unrolled spatial circuit sequentially in measurement order
/// (used by the equivalence checks; consumes the RNG exactly like run_tdm).
inline rmat sample_unrolled(const UnrolledCircuit &uc, double hbar, Rng &rng) {
    GaussianState state = GaussianState::vacuum(uc.total_modes, hbar);
    state = photonic::run_gaussian_circuit(state, uc.gates);
    rmat samples(uc.measure_groups.size(), uc.measure_groups.empty() ? 0 : uc.measure_groups[0].size());
    for (std::size_t step = 0; step < uc.measure_groups.size(); ++step) {
        auto meas =
            photonic::measure_homodyne(state, uc.measure_groups[step], uc.measure_phis[step], rng);
        for (int i = 0; i < meas.samples.size(); ++i)
            samples(static_cast<int>(step), i) = meas.samples(i);
        state = meas.state;
    }
    return samples;
}

} // namespace quasar::tdm
