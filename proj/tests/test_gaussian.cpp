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

#include "quasar/photonic/fock_tensor.hpp"
#include "quasar/photonic/gaussian_prob.hpp"
#include "quasar/photonic/gbs.hpp"
#include "testutil.hpp"

using namespace quasar;
using namespace quasar::photonic;

TEST(Symplectic, SqueezeDiagonalAction) {
    auto op = symplectic_of(pgate("s", {0}, {0.8}), 1);
    EXPECT_NEAR(op.s(0, 0), std::exp(-0.8), 1e-12);
    EXPECT_NEAR(op.s(1, 1), std::exp(0.8), 1e-12);
    EXPECT_NEAR(op.s(0, 1), 0.0, 1e-12);
    EXPECT_TRUE(is_symplectic(op.s));
}

TEST(Symplectic, PhaseShiftRotationBlock) {
    const double phi = 0.6;
    auto op = symplectic_of(pgate("ps", {0}, {phi}), 1);
    EXPECT_NEAR(op.s(0, 0), std::cos(phi), 1e-12);
    EXPECT_NEAR(op.s(0, 1), std::sin(phi), 1e-12);
    EXPECT_NEAR(op.s(1, 0), -std::sin(phi), 1e-12);
    EXPECT_NEAR(op.s(1, 1), std::cos(phi), 1e-12);
}

TEST(Symplectic, BeamSplitterIsSymplectic) {
    auto op = symplectic_of(pgate("bs", {0, 1}, {kPi / 4, 0.3}), 2);
    EXPECT_TRUE(is_symplectic(op.s, 1e-10));
}

TEST(Symplectic, CompositionStaysSymplectic) {
    Rng rng(61, "symp");
    rmat acc = rmat::Identity(6, 6);
    for (int i = 0; i < 20; ++i) {
        PhotonicGate g = (i % 3 == 0)
                             ? pgate("s", {static_cast<int>(rng.next_below(3))},
                                     {rng.uniform(-1.0, 1.0), rng.uniform(0, kPi)})
                             : (i % 3 == 1)
                                   ? pgate("ps", {static_cast<int>(rng.next_below(3))},
                                           {rng.uniform(0, 2 * kPi)})
                                   : pgate("bs", {0, static_cast<int>(1 + rng.next_below(2))},
                                           {rng.uniform(0, kPi / 2), rng.uniform(0, 2 * kPi)});
        acc = symplectic_of(g, 3).s * acc;
    }
    EXPECT_TRUE(is_symplectic(acc, 1e-8));
}

TEST(Evolve, VacuumRotationInvariant) {
    auto vac = GaussianState::vacuum(1);
    auto out = evolve(vac, symplectic_of(pgate("r", {0}, {1.1}), 1));
    EXPECT_LT((out.cov() - vac.cov()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Evolve, SqueezedVacuumCovariance) {
    const double r = 0.7;
    auto s = evolve(GaussianState::vacuum(1), symplectic_of(pgate("s", {0}, {r}), 1));
    EXPECT_NEAR(s.cov()(0, 0), std::exp(-2 * r), 1e-12); // hbar = 2: vacuum V = I
    EXPECT_NEAR(s.cov()(1, 1), std::exp(2 * r), 1e-12);
}

TEST(Evolve, EprQuadratureCorrelation) {
    // squeeze +r (x) on mode 0, p-squeezed via rotation on mode 1, 50:50 BS:
    // Var(x0 - x1) shrinks as e^{-2r}
    for (double r : {1.0, 3.0, 6.0}) {
        GaussianState st = GaussianState::vacuum(2);
        st = evolve(st, symplectic_of(pgate("s", {0}, {r}), 2));
        st = evolve(st, symplectic_of(pgate("s", {1}, {r}), 2));
        st = evolve(st, symplectic_of(pgate("r", {0}, {kPi / 2}), 2));
        st = evolve(st, symplectic_of(pgate("bs", {0, 1}, {kPi / 4, 0.0}), 2));
        const rmat &v = st.cov();
        const double var_minus = v(0, 0) + v(1, 1) - 2 * v(0, 1);
        EXPECT_NEAR(var_minus, 2.0 * std::exp(-2 * r), 1e-6 * std::exp(2 * r)) << r;
        EXPECT_GT(st.uncertainty_floor(), -1e-8);
    }
}

TEST(Loss, EndpointsAndUncertainty) {
    auto sq = evolve(GaussianState::vacuum(1), symplectic_of(pgate("s", {0}, {1.2}), 1));
    auto same = apply_loss(sq, 0, 1.0);
    EXPECT_LT((same.cov() - sq.cov()).cwiseAbs().maxCoeff(), 1e-12);
    auto vac = apply_loss(sq, 0, 0.0);
    EXPECT_LT((vac.cov() - GaussianState::vacuum(1).cov()).cwiseAbs().maxCoeff(), 1e-12);
    auto half = apply_loss(sq, 0, 0.5);
    EXPECT_GT(half.uncertainty_floor(), -1e-8);
    EXPECT_THROW(apply_loss(sq, 0, 1.5), invalid_input);
}

TEST(Homodyne, VacuumStatistics) {
    auto vac = GaussianState::vacuum(1); // hbar = 2, Var(x) = 1
    Rng rng(71, "homodyne-vac");
    const int shots = 100000;
    auto xs = homodyne_samples(vac, 0, kPi / 4, shots, rng);
    double mean = 0.0, var = 0.0;
    for (double x : xs) mean += x;
    mean /= shots;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= shots - 1;
    EXPECT_LT(std::abs(mean), 5.0 / std::sqrt(static_cast<double>(shots)));
    EXPECT_NEAR(var, 1.0, 0.03);
}

TEST(Homodyne, ConditioningProductStateLeavesRestAlone) {
    GaussianState st = GaussianState::vacuum(2);
    st = evolve(st, symplectic_of(pgate("s", {1}, {0.9}), 2));
    auto conditioned = condition_homodyne(st, {0}, {0.0}, rvec::Constant(1, 0.37));
    EXPECT_NEAR(conditioned.cov()(1, 1), std::exp(-1.8), 1e-12);
    EXPECT_NEAR(conditioned.cov()(3, 3), std::exp(1.8), 1e-12);
    EXPECT_NEAR(conditioned.mean()(1), 0.0, 1e-12);
    // measured mode reset to vacuum
    EXPECT_NEAR(conditioned.cov()(0, 0), 1.0, 1e-12);
    EXPECT_NEAR(conditioned.mean()(0), 0.0, 1e-12);
}

TEST(Homodyne, EprPairedOutcomes) {
    // At r = 9 the x outcomes of the two EPR arms agree to ~e^{-2r}.
    GaussianState st = GaussianState::vacuum(2);
    st = evolve(st, symplectic_of(pgate("s", {0}, {9.0}), 2));
    st = evolve(st, symplectic_of(pgate("s", {1}, {9.0}), 2));
    st = evolve(st, symplectic_of(pgate("r", {0}, {kPi / 2}), 2));
    st = evolve(st, symplectic_of(pgate("bs", {0, 1}, {kPi / 4, 0.0}), 2));
    Rng rng(73, "epr");
    for (int rep = 0; rep < 10; ++rep) {
        auto first = measure_homodyne(st, {0}, {0.0}, rng);
        auto second = measure_homodyne(first.state, {1}, {0.0}, rng);
        const double a = first.samples(0), b = second.samples(0);
        ASSERT_GT(std::abs(a), 1.0); // anti-squeezed scale, ~e^r
        EXPECT_LT(std::abs(a - b) / std::abs(a), 1e-3) << rep;
    }
}

TEST(Pnrd, VacuumAndParity) {
    auto vac = GaussianState::vacuum(2);
    EXPECT_NEAR(prob_pnrd(vac, {0, 0}), 1.0, 1e-12);
    auto sq = evolve(GaussianState::vacuum(1), symplectic_of(pgate("s", {0}, {1.0}), 1));
    EXPECT_NEAR(prob_pnrd(sq, {1}), 0.0, 1e-12);
    EXPECT_NEAR(prob_pnrd(sq, {3}), 0.0, 1e-12);
    EXPECT_NEAR(prob_pnrd(sq, {0}), 1.0 / std::cosh(1.0), 1e-12);
    EXPECT_NEAR(prob_pnrd(sq, {2}), std::pow(std::tanh(1.0), 2) / (2 * std::cosh(1.0)), 1e-12);
}

TEST(Pnrd, RejectsDisplacedStates) {
    auto st = evolve(GaussianState::vacuum(1), symplectic_of(pgate("d", {0}, {0.5}), 1));
    EXPECT_THROW(prob_pnrd(st, {0}), invalid_input);
}

TEST(CrossBackend, PnrdMatchesFockTensor) {
    // squeezers + interferometer on 3 modes, cutoff 14
    std::vector<PhotonicGate> gates{pgate("s", {0}, {0.6}),         pgate("s", {1}, {0.4, 0.9}),
                                    pgate("s", {2}, {0.5}),         pgate("bs", {0, 1}, {0.7, 0.2}),
                                    pgate("ps", {1}, {1.3}),        pgate("bs", {1, 2}, {kPi / 4, -0.5}),
                                    pgate("bs", {0, 2}, {0.9, 1.7})};
    GaussianState g = run_gaussian_circuit(GaussianState::vacuum(3), gates);
    FockTensorState f = run_tensor_circuit(FockTensorState::vacuum(3, 14), gates);
    for (const Occupation &pat :
         {Occupation{0, 0, 0}, Occupation{2, 0, 0}, Occupation{1, 1, 0}, Occupation{0, 1, 1},
          Occupation{2, 1, 1}, Occupation{1, 1, 2}, Occupation{2, 2, 0}}) {
        const double want = std::norm(f.amplitude(pat));
        EXPECT_NEAR(prob_pnrd(g, pat), want, 1e-6) << ket_string(pat);
    }
}

TEST(Threshold, VacuumAndCompleteness) {
    auto vac = GaussianState::vacuum(2);
    EXPECT_NEAR(prob_threshold(vac, {0, 0}), 1.0, 1e-12);
    EXPECT_NEAR(prob_threshold(vac, {1, 0}), 0.0, 1e-12);

    Rng rng(79, "thresh");
    for (int m = 2; m <= 4; ++m) {
        GaussianState st = GaussianState::vacuum(m);
        for (int i = 0; i < m; ++i)
            st = evolve(st, symplectic_of(pgate("s", {i}, {0.3 + 0.2 * i}), m));
        for (int i = 0; i + 1 < m; ++i)
            st = evolve(st, symplectic_of(pgate("bs", {i, i + 1},
                                                {rng.uniform(0, kPi / 2), rng.uniform(0, kPi)}),
                                          m));
        double total = 0.0;
        for (int mask = 0; mask < (1 << m); ++mask) {
            std::vector<int> clicks(m);
            for (int i = 0; i < m; ++i) clicks[i] = (mask >> i) & 1;
            total += prob_threshold(st, clicks);
        }
        EXPECT_NEAR(total, 1.0, 1e-6) << m;
    }
}

TEST(Threshold, CoarseGrainsPnrd) {
    std::vector<PhotonicGate> gates{pgate("s", {0}, {0.4}), pgate("s", {1}, {0.3}),
                                    pgate("s", {2}, {0.2}), pgate("bs", {0, 1}, {0.6, 0.1}),
                                    pgate("bs", {1, 2}, {1.0, 0.7})};
    GaussianState st = run_gaussian_circuit(GaussianState::vacuum(3), gates);
    // cutoff 8 per mode; totals above 12 carry ~1e-9 mass at this squeezing
    const int cutoff = 8;
    std::vector<int> clicks{1, 0, 1};
    double want = 0.0;
    for (int n0 = 1; n0 <= cutoff; ++n0)
        for (int n2 = 1; n2 <= cutoff && n0 + n2 <= 12; ++n2) want += prob_pnrd(st, {n0, 0, n2});
    EXPECT_NEAR(prob_threshold(st, clicks), want, 1e-5);
}

TEST(Sampler, VacuumAlwaysZero) {
    auto vac = GaussianState::vacuum(3);
    Rng rng(83, "sample-vac");
    auto stats = sample_detector(vac, "pnrd", 200, rng, 4);
    ASSERT_EQ(stats.counts.size(), 1u);
    EXPECT_EQ(stats.counts.begin()->second, 200u);
    EXPECT_EQ(total_photons(stats.counts.begin()->first), 0);
}

TEST(Sampler, TwoModeSqueezedVacuumPairs) {
    // TMSV: squeeze two modes and interfere (x-squeezed + p-squeezed arms)
    GaussianState st = GaussianState::vacuum(2);
    st = evolve(st, symplectic_of(pgate("s", {0}, {0.6}), 2));
    st = evolve(st, symplectic_of(pgate("s", {1}, {0.6}), 2));
    st = evolve(st, symplectic_of(pgate("r", {0}, {kPi / 2}), 2));
    st = evolve(st, symplectic_of(pgate("bs", {0, 1}, {kPi / 4, 0.0}), 2));
    Rng rng(89, "tmsv");
    auto stats = sample_detector(st, "pnrd", 500, rng, 5);
    for (const auto &[occ, count] : stats.counts) EXPECT_EQ(occ[0], occ[1]) << ket_string(occ);
}

TEST(Sampler, ThresholdMarginalClickRate) {
    // r = 1 squeezers, identity interferometer: per-mode click probability
    // is 1 - 1/cosh(1); check the empirical marginal within 5 sigma.
    GBSSpec spec;
    spec.nmode = 6;
    spec.squeezing.assign(6, 1.0);
    spec.unitary = cmat::Identity(6, 6);
    GaussianState st = build_gbs_state(spec);
    Rng rng(97, "gbs-click");
    const int shots = 20000;
    auto stats = sample_detector(st, "threshold", shots, rng);
    const double p = 1.0 - 1.0 / std::cosh(1.0);
    for (int mode = 0; mode < 6; ++mode) {
        double clicks = 0;
        for (const auto &[occ, count] : stats.counts) clicks += occ[mode] * count;
        const double sigma = std::sqrt(p * (1 - p) * shots);
        EXPECT_NEAR(clicks, p * shots, 5 * sigma) << mode;
    }
}

TEST(Gbs, ParityOfEqualSqueezersIdentityInterferometer) {
    GBSSpec spec;
    spec.nmode = 3;
    spec.squeezing.assign(3, 0.9);
    spec.unitary = cmat::Identity(3, 3);
    GaussianState st = build_gbs_state(spec);
    for (const Occupation &odd : {Occupation{1, 0, 0}, Occupation{1, 1, 1}, Occupation{2, 1, 0}})
        EXPECT_LT(prob_pnrd(st, odd), 1e-12) << ket_string(odd);
}

TEST(GbsGraph, EmptyGraphGivesVacuum) {
    auto enc = gbs_from_graph(rmat::Zero(4, 4), 2.0);
    for (double r : enc.spec.squeezing) EXPECT_EQ(r, 0.0);
    GaussianState st = build_gbs_state(enc.spec);
    EXPECT_LT((st.cov() - GaussianState::vacuum(4).cov()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(GbsGraph, SingleEdgeGraph) {
    rmat a = rmat::Zero(2, 2);
    a(0, 1) = a(1, 0) = 1.0;
    auto enc = gbs_from_graph(a, 1.0);
    EXPECT_NEAR(enc.spec.squeezing[0], enc.spec.squeezing[1], 1e-9);
    GaussianState st = build_gbs_state(enc.spec);
    const cmat b = gbs_b_matrix(st);
    // b proportional to the adjacency
    const double scale = b(0, 1).real() / a(0, 1);
    EXPECT_LT((b - scale * a.cast<cdouble>()).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_NEAR(std::abs(b(0, 0)), 0.0, 1e-8);
}

TEST(GbsGraph, PaperSixNodeAdjacency) {
    rmat a(6, 6);
    a << 0, 1, 1, 0, 0, 0,
         1, 0, 0, 1, 0, 1,
         1, 0, 0, 0, 0, 0,
         0, 1, 0, 0, 1, 1,
         0, 0, 0, 1, 0, 0,
         0, 1, 0, 1, 0, 0;
    auto enc = gbs_from_graph(a, 3.0);
    GaussianState st = build_gbs_state(enc.spec);
    // mean photon number hits the target: sum over modes of <n_i>
    const cmat sigma = complex_covariance(st);
    double nbar = 0.0;
    for (int i = 0; i < 6; ++i) nbar += sigma(i, i).real() - 0.5;
    EXPECT_NEAR(nbar, 3.0, 1e-6);
    // the state's B matrix reproduces the graph up to one scale
    const cmat b = gbs_b_matrix(st);
    double scale = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (a(i, j) != 0) scale = b(i, j).real() / a(i, j);
    EXPECT_LT((b - scale * a.cast<cdouble>()).cwiseAbs().maxCoeff(), 1e-6);
    // sampling runs
    Rng rng(101, "gbs-graph");
    auto stats = sample_detector(st, "pnrd", 50, rng, 2);
    std::uint64_t total = 0;
    for (const auto &[occ, count] : stats.counts) total += count;
    EXPECT_EQ(total, 50u);
}

TEST(Uncertainty, PreservedByRandomCircuits) {
    Rng rng(103, "uncert");
    GaussianState st = GaussianState::vacuum(3);
    for (int i = 0; i < 30; ++i) {
        const int which = static_cast<int>(rng.next_below(4));
        if (which == 0)
            st = evolve(st, symplectic_of(pgate("s", {static_cast<int>(rng.next_below(3))},
                                                {rng.uniform(-1, 1)}),
                                          3));
        else if (which == 1)
            st = evolve(st, symplectic_of(pgate("r", {static_cast<int>(rng.next_below(3))},
                                                {rng.uniform(0, 2 * kPi)}),
                                          3));
        else if (which == 2)
            st = evolve(st, symplectic_of(pgate("bs", {0, 1 + static_cast<int>(rng.next_below(2))},
                                                {rng.uniform(0, kPi / 2), rng.uniform(0, kPi)}),
                                          3));
        else
            st = apply_loss(st, static_cast<int>(rng.next_below(3)), rng.uniform(0.2, 1.0));
        ASSERT_GT(st.uncertainty_floor(), -1e-8) << i;
    }
}
