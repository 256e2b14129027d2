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

#include <unsupported/Eigen/MatrixFunctions>

#include "quasar/linalg/clements.hpp"
#include "quasar/photonic/fock_tensor.hpp"
#include "testutil.hpp"

using namespace quasar;
using namespace quasar::photonic;

namespace {

// The six-mode dual-rail CNOT: modes 0 and 5 are ancillas, modes 1-2 the
// control qubit, modes 3-4 the target qubit.
std::vector<PhotonicGate> dual_rail_cnot() {
    const double theta = 2.0 * std::acos(1.0 / std::sqrt(3.0));
    std::vector<PhotonicGate> g;
    g.push_back(pgate("h", {3, 4}));
    g.push_back(pgate("ps", {1}, {kPi}));
    g.push_back(pgate("bs_h", {0, 1}, {theta}));
    g.push_back(pgate("ps", {0}, {kPi}));
    g.push_back(pgate("ps", {3}, {kPi}));
    g.push_back(pgate("bs_h", {2, 3}, {theta}));
    g.push_back(pgate("ps", {2}, {kPi}));
    g.push_back(pgate("bs_h", {4, 5}, {theta}));
    g.push_back(pgate("h", {3, 4}));
    return g;
}

} // namespace

TEST(FockAmplitude, IdentityPassThrough) {
    cmat u = cmat::Identity(2, 2);
    auto amp = fock_amplitude(u, {1, 0}, {1, 0});
    EXPECT_FALSE(amp.photon_mismatch);
    EXPECT_NEAR(std::abs(amp.value - cdouble(1, 0)), 0.0, 1e-12);
}

TEST(FockAmplitude, HongOuMandel) {
    auto u = two_mode_unitary(pgate("bs", {0, 1}, {kPi / 4, 0.0}));
    auto amp = fock_amplitude(u, {1, 1}, {1, 1});
    EXPECT_NEAR(std::abs(amp.value), 0.0, 1e-12);
}

TEST(FockAmplitude, PhotonMismatchIsZeroWithFlag) {
    cmat u = cmat::Identity(2, 2);
    auto amp = fock_amplitude(u, {1, 0}, {1, 1});
    EXPECT_TRUE(amp.photon_mismatch);
    EXPECT_EQ(amp.value, cdouble(0, 0));
}

TEST(FockAmplitude, DualRailCnotTruthTable) {
    const cmat u = circuit_mode_unitary(dual_rail_cnot(), 6);
    // |00>, |01> map to themselves; |10> <-> |11|; all amplitudes 1/3.
    const Occupation q00{0, 1, 0, 1, 0, 0}, q01{0, 1, 0, 0, 1, 0};
    const Occupation q10{0, 0, 1, 1, 0, 0}, q11{0, 0, 1, 0, 1, 0};
    const std::vector<std::pair<Occupation, Occupation>> transitions{
        {q00, q00}, {q01, q01}, {q10, q11}, {q11, q10}};
    for (const auto &[in, out] : transitions) {
        const auto amp = fock_amplitude(u, in, out);
        EXPECT_NEAR(amp.value.real(), 1.0 / 3.0, 1e-9);
        EXPECT_NEAR(amp.value.imag(), 0.0, 1e-9);
    }
}

TEST(FockAmplitude, ProbabilityLawSumsToOne) {
    Rng rng(51, "fock-law");
    for (int m = 2; m <= 4; ++m) {
        cmat u = testutil::haar_unitary(rng, m);
        Occupation in(m, 0);
        in[0] = 2;
        if (m > 1) in[1] = 1;
        double total = 0.0;
        for (const auto &out : enumerate_occupations(total_photons(in), m))
            total += std::norm(fock_amplitude(u, in, out).value);
        EXPECT_NEAR(total, 1.0, 1e-8) << m;
    }
}

TEST(FockAmplitude, InvariantUnderSimultaneousPermutation) {
    Rng rng(53, "fock-perm");
    const int m = 3;
    cmat u = testutil::haar_unitary(rng, m);
    Occupation in{1, 2, 0}, out{0, 2, 1};
    const auto base = fock_amplitude(u, in, out);
    const std::vector<int> perm{2, 0, 1};
    cmat up(m, m);
    Occupation inp(m), outp(m);
    for (int i = 0; i < m; ++i) {
        inp[perm[i]] = in[i];
        outp[perm[i]] = out[i];
        for (int j = 0; j < m; ++j) up(perm[i], perm[j]) = u(i, j);
    }
    const auto permuted = fock_amplitude(up, inp, outp);
    EXPECT_NEAR(std::abs(base.value - permuted.value), 0.0, 1e-10);
}

TEST(FockDistribution, SinglePhotonBeamSplitter) {
    auto u = two_mode_unitary(pgate("bs", {0, 1}, {kPi / 4, 0.0}));
    auto dist = fock_prob_distribution(u, {1, 0});
    EXPECT_NEAR(dist.at({1, 0}), 0.5, 1e-12);
    EXPECT_NEAR(dist.at({0, 1}), 0.5, 1e-12);
}

TEST(FockDistribution, HongOuMandelBunching) {
    auto u = two_mode_unitary(pgate("bs", {0, 1}, {kPi / 4, 0.0}));
    auto dist = fock_prob_distribution(u, {1, 1});
    EXPECT_NEAR(dist.at({2, 0}), 0.5, 1e-10);
    EXPECT_NEAR(dist.at({0, 2}), 0.5, 1e-10);
    EXPECT_NEAR(dist.at({1, 1}), 0.0, 1e-10);
}

TEST(FockDistribution, ClementsCircuitFromDecomposition) {
    // The six-mode unitary decomposes into the rectangular mesh; encoding
    // the parameters back as mzi + ps gates must reproduce the matrix, and
    // the output distribution of (1,0,1,0,0,0) must normalize.
    const double r3 = std::sqrt(3.0), r2 = std::sqrt(2.0);
    cmat u(6, 6);
    u << 1, 0, 1, -1, 0, 0,
         0, 1, 0, 0, 0, r2,
         1, 0, 0, 1, 1, 0,
        -1, 0, 1, 0, 1, 0,
         0, 0, 1, 1, -1, 0,
         0, r2, 0, 0, 0, -1;
    u /= r3;
    auto params = linalg::clements_decompose(u);
    std::vector<PhotonicGate> gates;
    for (const auto &t : params.mzi_list)
        gates.push_back(pgate("mzi", {t.mode, t.mode + 1}, {t.theta, t.phi}));
    for (int i = 0; i < 6; ++i)
        gates.push_back(pgate("ps", {i}, {params.output_phases[i]}));
    const cmat rebuilt = circuit_mode_unitary(gates, 6);
    EXPECT_LT((rebuilt - u).cwiseAbs().maxCoeff(), 1e-8);

    auto dist = fock_prob_distribution(rebuilt, {1, 0, 1, 0, 0, 0});
    double total = 0.0;
    for (const auto &[occ, p] : dist) total += p;
    EXPECT_NEAR(total, 1.0, 1e-8);
}

TEST(PostSelect, DualRailSuccessProbability) {
    const cmat u = circuit_mode_unitary(dual_rail_cnot(), 6);
    auto keep = [](const Occupation &occ) {
        return occ[1] + occ[2] == 1 && occ[3] + occ[4] == 1 && occ[0] == 0 && occ[5] == 0;
    };
    for (const Occupation &in : {Occupation{0, 1, 0, 1, 0, 0}, Occupation{0, 0, 1, 0, 1, 0}}) {
        auto dist = fock_prob_distribution(u, in);
        auto sel = post_select(dist, keep);
        EXPECT_NEAR(sel.success, 1.0 / 9.0, 1e-9);
    }
}

TEST(PostSelect, TrivialPredicates) {
    auto u = two_mode_unitary(pgate("bs", {0, 1}, {kPi / 4, 0.0}));
    auto dist = fock_prob_distribution(u, {1, 0});
    auto all = post_select(dist, [](const Occupation &) { return true; });
    EXPECT_NEAR(all.success, 1.0, 1e-12);
    auto one = post_select(dist, [](const Occupation &o) { return o[0] == 1; });
    EXPECT_NEAR(one.dist.at({1, 0}), 1.0, 1e-12);
    EXPECT_THROW(post_select(dist, [](const Occupation &o) { return o[0] == 7; }), guard_error);
}

TEST(FockTensor, PhaseShifterOnSinglePhoton) {
    auto s = FockTensorState::from_occupation({1}, 4);
    s = evolve_tensor(s, pgate("ps", {0}, {0.7}));
    EXPECT_NEAR(std::abs(s.amplitude({1}) - std::exp(cdouble(0, 0.7))), 0.0, 1e-12);
}

TEST(FockTensor, SqueezedVacuumClosedForm) {
    const double r = 0.9;
    auto s = FockTensorState::vacuum(1, 10);
    s = evolve_tensor(s, pgate("s", {0}, {r}));
    for (int k = 0; 2 * k < 10; ++k) {
        double num = std::sqrt(factorial(2 * k)) / (std::pow(2.0, k) * factorial(k));
        double want = std::pow(-std::tanh(r), k) * num / std::sqrt(std::cosh(r));
        EXPECT_NEAR(s.amplitude(Occupation{2 * k}).real(), want, 1e-10) << k;
        EXPECT_NEAR(s.amplitude(Occupation{2 * k}).imag(), 0.0, 1e-12);
        if (2 * k + 1 < 10)
            EXPECT_NEAR(std::abs(s.amplitude(Occupation{2 * k + 1})), 0.0, 1e-14);
    }
}

TEST(FockTensor, SqueezerMatrixMatchesDenseExponential) {
    // oracle: exp((conj(z) a^2 - z a^+2)/2) built densely at high cutoff
    const int big = 40, check = 8;
    const double r = 0.5, theta = 0.8;
    const cdouble z = r * std::exp(cdouble(0, theta));
    cmat a = cmat::Zero(big, big);
    for (int n = 1; n < big; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    cmat gen = 0.5 * (std::conj(z) * a * a - z * (a.adjoint() * a.adjoint()));
    cmat dense = gen.exp();
    cmat rec = squeezer_matrix(r, theta, big);
    EXPECT_LT((dense.topLeftCorner(check, check) - rec.topLeftCorner(check, check))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-8);
}

TEST(FockTensor, MatchesBasisBackendOnConservingCircuit) {
    std::vector<PhotonicGate> gates{pgate("bs", {0, 1}, {0.6, 0.3}), pgate("ps", {1}, {1.1}),
                                    pgate("bs", {1, 2}, {kPi / 4, -0.4}),
                                    pgate("dc", {0, 2}, {1.3})};
    const cmat u = circuit_mode_unitary(gates, 3);
    auto s = FockTensorState::from_occupation({1, 1, 0}, 6);
    s = run_tensor_circuit(s, gates);
    for (const auto &out : enumerate_occupations(2, 3)) {
        const cdouble want = fock_amplitude(u, {1, 1, 0}, out).value;
        EXPECT_NEAR(std::abs(s.amplitude(out) - want), 0.0, 1e-10) << ket_string(out);
    }
    EXPECT_LT(s.truncation_loss(), 1e-12);
}

TEST(FockTensor, TwoModeBlocksKeepHongOuMandel) {
    auto s = FockTensorState::from_occupation({1, 1}, 5);
    s = evolve_tensor(s, pgate("bs", {0, 1}, {kPi / 4, 0.0}));
    EXPECT_NEAR(std::abs(s.amplitude({1, 1})), 0.0, 1e-12);
    EXPECT_NEAR(std::norm(s.amplitude({2, 0})), 0.5, 1e-12);
    EXPECT_NEAR(std::norm(s.amplitude({0, 2})), 0.5, 1e-12);
}

TEST(FockTensor, LossChannel) {
    auto s0 = FockTensorState::from_occupation({1}, 4);
    auto id = evolve_tensor(s0, pgate("loss", {0}, {1.0}));
    EXPECT_NEAR(id.density()(1, 1).real(), 1.0, 1e-12);
    auto dark = evolve_tensor(s0, pgate("loss", {0}, {0.0}));
    EXPECT_NEAR(dark.density()(0, 0).real(), 1.0, 1e-12);
    auto half = evolve_tensor(s0, pgate("loss", {0}, {0.5}));
    EXPECT_NEAR(half.density().trace().real(), 1.0, 1e-12);
    EXPECT_NEAR(half.density()(1, 1).real(), 0.5, 1e-12);
}

TEST(FockTensor, PostSelectionReducesModes) {
    // two-mode squeezed-ish: squeeze both modes and couple, then select
    std::vector<PhotonicGate> gates{pgate("s", {0}, {0.5}), pgate("s", {1}, {0.5}),
                                    pgate("bs", {0, 1}, {kPi / 4, 0.0})};
    auto s = run_tensor_circuit(FockTensorState::vacuum(2, 12), gates);
    auto sel = post_select_tensor(s, {{1, 0}});
    EXPECT_EQ(sel.state.nmode(), 1);
    EXPECT_NEAR(sel.state.norm2(), 1.0, 1e-12);
    EXPECT_GT(sel.success, 0.0);
    EXPECT_LT(sel.success, 1.0);
    EXPECT_THROW(post_select_tensor(s, {{0, 0}, {1, 0}}), invalid_input);
}

TEST(FockTensor, ExplosionGuard) {
    cmat u = cmat::Identity(12, 12);
    Occupation in(12, 3);
    EXPECT_THROW(fock_prob_distribution(u, in, 1e4), guard_error);
}

TEST(WignerFromFock, KnownStates) {
    const double hbar = 2.0;
    // vacuum: Gaussian peak 1/(pi hbar)
    std::vector<cdouble> vac{1.0, 0.0, 0.0};
    EXPECT_NEAR(wigner_from_fock(vac, 0, 0), 1.0 / (kPi * hbar), 1e-12);
    EXPECT_NEAR(wigner_from_fock(vac, 1.0, -0.5),
                std::exp(-(1.0 + 0.25) / hbar) / (kPi * hbar), 1e-12);
    // |1>: negative at the origin
    std::vector<cdouble> one{0.0, 1.0, 0.0};
    EXPECT_NEAR(wigner_from_fock(one, 0, 0), -1.0 / (kPi * hbar), 1e-12);
    // squeezed vacuum: matches the Gaussian form with V = diag(e^-2r, e^2r)
    const double r = 0.6;
    cmat sq = squeezer_matrix(r, 0.0, 60);
    std::vector<cdouble> amps(60);
    for (int n = 0; n < 60; ++n) amps[n] = sq(n, 0);
    for (double x : {0.0, 0.4, -1.1})
        for (double p : {0.0, 0.8}) {
            const double want = std::exp(-x * x / (hbar * std::exp(-2 * r)) -
                                         p * p / (hbar * std::exp(2 * r))) /
                                (kPi * hbar);
            EXPECT_NEAR(wigner_from_fock(amps, x, p), want, 1e-10) << x << "," << p;
        }
}
