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

#include <gtest/gtest.h>

#include <cstdio>

#include "quasar/mps/checkpoint.hpp"
#include "quasar/mps/circuit.hpp"
#include "testutil.hpp"

using namespace quasar;
using namespace quasar::mps;

namespace {

cvec random_state(Rng &rng, int dim) {
    cvec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = cdouble(rng.normal(), rng.normal());
    v.normalize();
    return v;
}

double fidelity(const cvec &a, const cvec &b) { return std::norm(a.dot(b)); }

} // namespace

TEST(FromDense, ProductStateHasTrivialBonds) {
    cvec amps = cvec::Zero(8);
    amps(0b010) = 1.0;
    MPSState s = MPSState::from_dense(amps, 3, 2, 16);
    for (const auto &sh : s.shapes()) {
        EXPECT_EQ(sh[0], 1);
        EXPECT_EQ(sh[2], 1);
    }
    EXPECT_LT((s.to_dense() - amps).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FromDense, Ghz4SchmidtStructure) {
    cvec amps = cvec::Zero(16);
    amps(0) = amps(15) = 1 / std::sqrt(2.0);
    MPSState s = MPSState::from_dense(amps, 4, 2, 2);
    EXPECT_LT(s.truncation_error(), 1e-12);
    EXPECT_GT(fidelity(s.to_dense(), amps), 1.0 - 1e-12);
    rvec mid = s.bond_spectrum(1);
    ASSERT_EQ(mid.size(), 2);
    EXPECT_NEAR(mid(0), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(mid(1), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(s.entanglement_entropy(1), std::log(2.0), 1e-10);
}

TEST(FromDense, RandomRoundTrip) {
    Rng rng(7, "mps-roundtrip");
    for (int n : {2, 5, 8, 10}) {
        cvec amps = random_state(rng, 1 << n);
        MPSState s = MPSState::from_dense(amps, n, 2, 1 << (n / 2 + 1));
        EXPECT_LT(s.truncation_error(), 1e-20) << n;
        EXPECT_GT(fidelity(s.to_dense(), amps), 1.0 - 1e-10) << n;
        EXPECT_NEAR(s.norm(), 1.0, 1e-10);
    }
}

TEST(FromDense, TruncationMonotoneInChi) {
    // fixed random 10-qubit state: fidelity vs the dense vector is
    // non-decreasing in chi
    Rng rng(11, "mps-chi");
    cvec amps = random_state(rng, 1 << 10);
    double prev = 0.0;
    for (int chi : {2, 4, 8, 16, 32}) {
        MPSState s = MPSState::from_dense(amps, 10, 2, chi);
        cvec back = s.to_dense();
        back.normalize();
        const double f = fidelity(back, amps);
        EXPECT_GE(f, prev - 1e-12) << chi;
        prev = f;
    }
    EXPECT_GT(prev, 0.5);
}

TEST(ApplyGate, SingleSiteKeepsBonds) {
    MPSState s = MPSState::product({0, 0, 0}, 2, 8);
    auto before = s.shapes();
    apply_gate_mps(s, qubit::make_gate("h", {1}));
    EXPECT_EQ(s.shapes(), before);
}

TEST(ApplyGate, MatchesDenseSimulationWithSwaps) {
    // random circuits incl. non-adjacent two-qubit gates, unbounded chi
    Rng rng(13, "mps-dense");
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 5;
        qubit::Circuit cir(n);
        for (int g = 0; g < 12; ++g) {
            const double u = rng.uniform();
            const int a = static_cast<int>(rng.next_below(n));
            int b = a;
            while (b == a) b = static_cast<int>(rng.next_below(n));
            if (u < 0.3)
                cir.cnot(a, b);
            else if (u < 0.45)
                cir.rzz(a, b, rng.uniform(-kPi, kPi));
            else if (u < 0.55)
                cir.swap(a, b);
            else if (u < 0.7)
                cir.h(a);
            else
                cir.ry(a, rng.uniform(-kPi, kPi));
        }
        MPSState s = run_circuit_mps(cir, 64);
        const cvec want = cir.forward().amplitudes();
        EXPECT_GT(fidelity(s.to_dense(), want), 1.0 - 1e-10) << trial;
        // left-canonical isometry holds left of center after every gate
        for (int k = 0; k < s.center(); ++k)
            EXPECT_LT(s.left_isometry_defect(k), 1e-8) << trial << " site " << k;
    }
}

TEST(ApplyGate, CnotRingShapeSequence) {
    // 20 qubits, chi = 7: the shape list is pinned including the head
    // (1,2,2), (2,2,4), (4,2,7), (7,2,7) and the mirrored tail (2,2,1).
    qubit::Circuit cir(20);
    cir.cnot_ring();
    MPSState s = run_circuit_mps(cir, 7);
    auto sh = s.shapes();
    ASSERT_EQ(sh.size(), 20u);
    EXPECT_EQ(sh[0], (std::array<int, 3>{1, 2, 2}));
    EXPECT_EQ(sh[1], (std::array<int, 3>{2, 2, 4}));
    EXPECT_EQ(sh[2], (std::array<int, 3>{4, 2, 7}));
    EXPECT_EQ(sh[3], (std::array<int, 3>{7, 2, 7}));
    for (int k = 3; k <= 16; ++k) {
        EXPECT_EQ(sh[k][0], 7) << k;
        EXPECT_EQ(sh[k][1], 2) << k;
    }
    EXPECT_EQ(sh[17], (std::array<int, 3>{7, 2, 4}));
    EXPECT_EQ(sh[18], (std::array<int, 3>{4, 2, 2}));
    EXPECT_EQ(sh[19], (std::array<int, 3>{2, 2, 1}));
    // the state itself is still exactly |0...0>
    cvec dense = s.to_dense();
    EXPECT_NEAR(std::abs(dense(0)), 1.0, 1e-10);
}

TEST(ApplyGate, FockBeamSplitterChainShapes) {
    // 20 modes, cutoff 4, chi = 3, all |1>: (1,4,3), (3,4,3), ..., (3,4,1)
    MPSState s = MPSState::product(std::vector<int>(20, 1), 4, 3);
    for (int i = 0; i + 1 < 20; ++i)
        apply_fock_gate_mps(s, photonic::pgate("bs", {i, i + 1}, {kPi / 4, 0.0}));
    auto sh = s.shapes();
    EXPECT_EQ(sh[0], (std::array<int, 3>{1, 4, 3}));
    for (int k = 1; k <= 18; ++k) EXPECT_EQ(sh[k], (std::array<int, 3>{3, 4, 3})) << k;
    EXPECT_EQ(sh[19], (std::array<int, 3>{3, 4, 1}));
}

TEST(Expectation, PlusStateAndGhz) {
    qubit::Circuit plus(4);
    for (int i = 0; i < 4; ++i) plus.h(i);
    MPSState s = run_circuit_mps(plus, 8);
    for (int i = 0; i < 4; ++i)
        EXPECT_NEAR(expectation_local(s, {{i}, "x"}), 1.0, 1e-10);

    qubit::Circuit ghz(4);
    ghz.h(0);
    for (int i = 0; i + 1 < 4; ++i) ghz.cnot(i, i + 1);
    MPSState g = run_circuit_mps(ghz, 8);
    for (int i = 0; i < 4; ++i)
        EXPECT_NEAR(expectation_local(g, {{i}, "z"}), 0.0, 1e-10);
    EXPECT_NEAR(expectation_local(g, {{1, 2}, "zz"}), 1.0, 1e-10);
}

TEST(Norm, TruncationErrorBoundsNormLoss) {
    Rng rng(17, "mps-norm");
    cvec amps = random_state(rng, 1 << 8);
    MPSState s = MPSState::from_dense(amps, 8, 2, 3);
    const double n2 = s.norm() * s.norm();
    EXPECT_LE(1.0 - n2, s.truncation_error() + 1e-10);
    EXPECT_GT(s.truncation_error(), 0.0);
    s.normalize();
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
}

TEST(Entropy, BoundedByLogChi) {
    Rng rng(19, "mps-ent");
    cvec amps = random_state(rng, 1 << 8);
    for (int chi : {2, 4, 8}) {
        MPSState s = MPSState::from_dense(amps, 8, 2, chi);
        for (int b = 0; b + 1 < 8; ++b)
            EXPECT_LE(s.entanglement_entropy(b), std::log(double(chi)) + 1e-9) << chi;
    }
}

TEST(Tfim, TrotterStepIsIdentityAtZeroDt) {
    MPSState s = MPSState::product({0, 0, 0, 0}, 2, 16);
    for (int i = 0; i < 4; ++i) apply_gate_mps(s, qubit::make_gate("h", {i}));
    tfim_trotter_step(s, 1.0, 1.2, 0.0);
    EXPECT_NEAR(average_x_magnetization(s), 1.0, 1e-10);
}

TEST(Tfim, MatchesDenseOracleAtTwelveQubits) {
    // J = 1, h = 1.2, dt = 0.1: magnetization trajectory against the dense
    // state-vector oracle, 20 steps, chi = 64 (exact at this width)
    const int n = 12;
    const double j = 1.0, h = 1.2, dt = 0.1;
    MPSState s = MPSState::product(std::vector<int>(n, 0), 2, 64);
    for (int i = 0; i < n; ++i) apply_gate_mps(s, qubit::make_gate("h", {i}));

    qubit::QubitState dense = qubit::QubitState::basis(n);
    qubit::Circuit hlayer(n);
    for (int i = 0; i < n; ++i) hlayer.h(i);
    dense = hlayer.forward(dense);

    auto dense_step = [&](qubit::QubitState st) {
        qubit::Circuit step(n);
        for (int i = 0; i < n; ++i) step.rx(i, h * dt);
        for (int i = 0; i + 1 < n; i += 2) step.rzz(i, i + 1, 2 * j * dt);
        for (int i = 1; i + 1 < n; i += 2) step.rzz(i, i + 1, 2 * j * dt);
        step.rzz(n - 1, 0, 2 * j * dt);
        for (int i = 0; i < n; ++i) step.rx(i, h * dt);
        return step.forward(st);
    };
    auto dense_mag = [&](const qubit::QubitState &st) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) total += qubit::expectation_one(st, {{i}, "x"});
        return total / n;
    };

    for (int step = 0; step < 20; ++step) {
        tfim_trotter_step(s, j, h, dt);
        dense = dense_step(dense);
        EXPECT_NEAR(average_x_magnetization(s), dense_mag(dense), 1e-6) << "step " << step;
    }
}

TEST(Checkpoint, RoundTripsThroughDisk) {
    Rng rng(23, "mps-ckpt");
    cvec amps = random_state(rng, 1 << 6);
    MPSState s = MPSState::from_dense(amps, 6, 2, 8);
    const std::string path = "/tmp/quasar_mps_ckpt_test.bin";
    save_checkpoint(s, path);
    auto loaded = load_checkpoint(path);
    EXPECT_EQ(loaded.state.nsite(), 6);
    EXPECT_GT(fidelity(loaded.state.to_dense(), s.to_dense()), 1.0 - 1e-12);
    ASSERT_EQ(loaded.bond_spectra.size(), 5u);
    std::remove(path.c_str());
}
