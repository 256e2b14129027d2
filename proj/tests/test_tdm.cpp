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

#include "quasar/tdm/tdm.hpp"
#include "testutil.hpp"

using namespace quasar;
using namespace quasar::tdm;
using photonic::pgate;

namespace {

// Single delay-loop program: squeeze, couple through the loop, rotate,
// measure x. The canonical single-mode TDM example.
TDMProgram loop_program(double r_rot = 0.0) {
    TDMProgram prog;
    prog.nmode = 1;
    prog.ops.push_back(pgate("s", {0}, {1.0}));
    prog.ops.push_back(delay(0, 1, {kPi / 4, 0.0}));
    if (r_rot != 0.0) prog.ops.push_back(pgate("r", {0}, {r_rot}));
    prog.measure_wires = {0};
    prog.measure_phis = {0.0};
    return prog;
}

TDMProgram epr_program(double r) {
    TDMProgram prog;
    prog.nmode = 1;
    prog.ops.push_back(pgate("s", {0}, {r}));
    prog.ops.push_back(delay(0, 1, {kPi / 2, kPi / 2}, /*encode=*/true));
    prog.measure_wires = {0};
    prog.measure_phis = {0.0};
    return prog;
}

// Four-mode entangling program with two delay loops (ntau 1 and 5).
TDMProgram cluster_program(double r, int long_tau = 5) {
    TDMProgram prog;
    prog.nmode = 4;
    for (int i = 0; i < 4; ++i) prog.ops.push_back(pgate("s", {i}, {r}));
    prog.ops.push_back(pgate("r", {0}, {kPi / 2}));
    prog.ops.push_back(pgate("r", {2}, {kPi / 2}));
    prog.ops.push_back(pgate("bs", {0, 1}, {kPi / 4, 0.0}));
    prog.ops.push_back(pgate("bs", {2, 3}, {kPi / 4, 0.0}));
    prog.ops.push_back(pgate("bs", {1, 2}, {kPi / 4, 0.0}));
    prog.ops.push_back(delay(1, 1, {kPi / 2, kPi}));
    prog.ops.push_back(delay(2, long_tau, {kPi / 2, kPi}));
    prog.ops.push_back(pgate("bs", {0, 1}, {kPi / 4, 0.0}));
    prog.ops.push_back(pgate("bs", {2, 3}, {kPi / 4, 0.0}));
    prog.measure_wires = {0, 1, 2, 3};
    prog.measure_phis = {0.0, 0.0, 0.0, 0.0};
    return prog;
}

std::vector<double> nullifier_residuals(const rmat &samples, int nsteps_used, int ntau_long) {
    std::vector<double> err;
    for (int i = 0; i + ntau_long < nsteps_used; ++i) {
        const double lhs = samples(i, 0) + samples(i, 1);
        const double rhs = (-samples(i + 1, 0) + samples(i + 1, 1) + samples(i + ntau_long, 2) +
                            samples(i + ntau_long, 3)) /
                           std::sqrt(2.0);
        err.push_back(lhs - rhs);
    }
    return err;
}

} // namespace

TEST(Unroll, ModeCountsMatchProgramStructure) {
    TDMProgram prog = loop_program(0.5);
    auto u1 = unroll(prog, 1);
    EXPECT_EQ(u1.total_modes, 2); // 1 spatial step + 1 loop mode
    EXPECT_EQ(u1.measure_groups.size(), 1u);
    auto u2 = unroll(prog, 2);
    EXPECT_EQ(u2.total_modes, 3);
    auto uc = unroll(cluster_program(1.0), 3);
    EXPECT_EQ(uc.total_modes, 4 * 3 + 1 + 5);
}

TEST(Unroll, SampleEquivalenceWithRunTdm) {
    // same seeds, same measurement order: the unrolled spatial circuit and
    // the step-carried evolution must produce identical samples
    for (int nstep : {1, 2, 3}) {
        TDMProgram prog = loop_program(0.7);
        Rng rng_a(5, "tdm-equiv");
        auto direct = run_tdm(prog, nstep, {}, rng_a);
        Rng rng_b(5, "tdm-equiv");
        auto unrolled = sample_unrolled(unroll(prog, nstep), prog.hbar, rng_b);
        ASSERT_EQ(direct.samples.rows(), unrolled.rows());
        for (int i = 0; i < unrolled.rows(); ++i)
            EXPECT_NEAR(direct.samples(i, 0), unrolled(i, 0), 1e-8) << "step " << i;
    }
}

TEST(Unroll, ClusterEquivalence) {
    TDMProgram prog = cluster_program(0.8, 2);
    Rng rng_a(7, "tdm-cluster");
    auto direct = run_tdm(prog, 3, {}, rng_a);
    Rng rng_b(7, "tdm-cluster");
    auto unrolled = sample_unrolled(unroll(prog, 3), prog.hbar, rng_b);
    for (int i = 0; i < unrolled.rows(); ++i)
        for (int j = 0; j < unrolled.cols(); ++j)
            EXPECT_NEAR(direct.samples(i, j), unrolled(i, j), 1e-8);
}

TEST(Delay, FullSwapDecouplesSteps) {
    // theta = pi/2 swaps everything into the loop: outputs are the previous
    // step's pulses, so with no squeezing every sample is iid vacuum
    TDMProgram prog;
    prog.nmode = 1;
    prog.ops.push_back(delay(0, 1, {kPi / 2, 0.0}));
    prog.measure_wires = {0};
    prog.measure_phis = {0.0};
    Rng rng(11, "tdm-swap");
    auto run = run_tdm(prog, 200, {}, rng);
    double mean = 0.0, var = 0.0;
    for (int i = 0; i < 200; ++i) mean += run.samples(i, 0);
    mean /= 200;
    for (int i = 0; i < 200; ++i) var += std::pow(run.samples(i, 0) - mean, 2);
    var /= 199;
    EXPECT_LT(std::abs(mean), 5.0 / std::sqrt(200.0));
    EXPECT_NEAR(var, 1.0, 0.35); // vacuum variance hbar/2 = 1
}

TEST(Delay, FullReflectionOutputsLoopVacuumFirst) {
    // theta = 0: the incoming pulse passes straight through and the loop
    // never releases its vacuum... with the bs convention theta=0 is the
    // identity coupling, so outputs are the squeezed pulses themselves.
    TDMProgram prog;
    prog.nmode = 1;
    prog.ops.push_back(pgate("s", {0}, {1.5}));
    prog.ops.push_back(delay(0, 1, {0.0, 0.0}));
    prog.measure_wires = {0};
    prog.measure_phis = {0.0};
    Rng rng(13, "tdm-reflect");
    auto run = run_tdm(prog, 100, {}, rng);
    double var = 0.0;
    for (int i = 0; i < 100; ++i) var += run.samples(i, 0) * run.samples(i, 0);
    var /= 100;
    EXPECT_NEAR(var, std::exp(-3.0), 0.5 * std::exp(-3.0)); // x-squeezed pulses
}

TEST(Epr, PairedSamplesAtHighSqueezing) {
    TDMProgram prog = epr_program(9.0);
    const std::vector<std::vector<double>> data{{kPi / 2, kPi / 2}, {kPi / 4, 0.0}};
    Rng rng(17, "tdm-epr");
    auto run = run_tdm(prog, 13, data, rng);
    // samples pair up after the step-0 swap-out: (1,2), (3,4), ...
    for (int k = 1; k + 1 < 13; k += 2) {
        const double a = run.samples(k, 0), b = run.samples(k + 1, 0);
        ASSERT_GT(std::abs(a), 10.0) << k; // anti-squeezed magnitude at r=9
        EXPECT_LT(std::abs(a - b) / std::abs(a), 1e-3) << k;
    }
}

TEST(Epr, ZeroSqueezingGivesUncorrelatedVacuum) {
    TDMProgram prog = epr_program(0.0);
    const std::vector<std::vector<double>> data{{kPi / 2, kPi / 2}, {kPi / 4, 0.0}};
    Rng rng(19, "tdm-epr0");
    auto run = run_tdm(prog, 401, data, rng);
    double corr = 0.0, var = 0.0;
    for (int k = 1; k + 1 < 401; k += 2) {
        corr += run.samples(k, 0) * run.samples(k + 1, 0);
        var += run.samples(k, 0) * run.samples(k, 0);
    }
    EXPECT_LT(std::abs(corr / var), 0.2); // no pairing without squeezing
}

TEST(Cluster, NullifierResiduals) {
    TDMProgram prog = cluster_program(8.0);
    Rng rng(23, "tdm-nullifier");
    auto run = run_tdm(prog, 100, {}, rng);
    auto err = nullifier_residuals(run.samples, 100, 5);
    ASSERT_EQ(err.size(), 95u);
    double mean = 0.0;
    for (double e : err) mean += e;
    mean /= err.size();
    double var = 0.0;
    for (double e : err) var += (e - mean) * (e - mean);
    var /= err.size() - 1;
    EXPECT_LT(var, 1e-5);
    EXPECT_LT(std::abs(mean), 1e-3);
}

TEST(Cluster, NullifierVarianceScalesWithSqueezing) {
    auto variance_at = [](double r) {
        TDMProgram prog = cluster_program(r);
        Rng rng(29, "tdm-scale");
        auto run = run_tdm(prog, 60, {}, rng);
        auto err = nullifier_residuals(run.samples, 60, 5);
        double mean = 0.0;
        for (double e : err) mean += e;
        mean /= err.size();
        double var = 0.0;
        for (double e : err) var += (e - mean) * (e - mean);
        return var / (err.size() - 1);
    };
    const double v4 = variance_at(4.0), v8 = variance_at(8.0);
    const double ratio = v8 / v4;
    EXPECT_NEAR(ratio, std::exp(-8.0), 0.5 * std::exp(-8.0));
}

TEST(Validation, UnmeasuredWireRejected) {
    TDMProgram prog;
    prog.nmode = 2;
    prog.ops.push_back(pgate("s", {0}, {1.0}));
    prog.measure_wires = {0};
    prog.measure_phis = {0.0};
    EXPECT_THROW(prog.validate(), invalid_input);
}

TEST(Validation, EncodedProgramNeedsData) {
    TDMProgram prog = epr_program(1.0);
    Rng rng(0);
    EXPECT_THROW(run_tdm(prog, 3, {}, rng), invalid_input);
}
