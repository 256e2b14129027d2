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

#include "quasar/mbqc/execute.hpp"
#include "quasar/mbqc/transpile.hpp"
#include "testutil.hpp"

using namespace quasar;
using namespace quasar::mbqc;

namespace {

double fidelity_up_to_phase(const cvec &a, const cvec &b) {
    return std::norm(a.dot(b));
}

// Hand-built four-node pattern with every command kind (mirrors the
// construction-from-scratch workflow).
Pattern workflow_pattern() {
    Pattern p({0, 1});
    p.n(2);
    p.e(0, 2);
    p.e(1, 2);
    p.m(0, kPi);
    p.m(1, kPi, Plane::XY, {0});
    p.n(3);
    p.e(2, 3);
    p.m(2, kPi, Plane::XY, {0}, {1});
    p.x(3, {0, 1});
    return p;
}

qubit::Circuit random_circuit(Rng &rng, int nq, int ngates) {
    qubit::Circuit cir(nq);
    for (int i = 0; i < ngates; ++i) {
        const double u = rng.uniform();
        const int a = static_cast<int>(rng.next_below(nq));
        int b = a;
        if (nq > 1)
            while (b == a) b = static_cast<int>(rng.next_below(nq));
        if (u < 0.35 && nq > 1) {
            const double v = rng.uniform();
            if (v < 0.4)
                cir.cnot(a, b);
            else if (v < 0.6)
                cir.cz(a, b);
            else if (v < 0.7)
                cir.cp(a, b, rng.uniform(-kPi, kPi));
            else if (v < 0.8)
                cir.swap(a, b);
            else if (v < 0.9)
                cir.rzz(a, b, rng.uniform(-kPi, kPi));
            else
                cir.cry(a, b, rng.uniform(-kPi, kPi));
        } else {
            const double v = rng.uniform();
            if (v < 0.15)
                cir.h(a);
            else if (v < 0.25)
                cir.add(qubit::make_gate("t", {a}));
            else if (v < 0.4)
                cir.rx(a, rng.uniform(-kPi, kPi));
            else if (v < 0.55)
                cir.ry(a, rng.uniform(-kPi, kPi));
            else if (v < 0.7)
                cir.rz(a, rng.uniform(-kPi, kPi));
            else if (v < 0.85)
                cir.add(qubit::make_gate("u3", {a}, {},
                                         {rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi),
                                          rng.uniform(-kPi, kPi)}));
            else
                cir.x(a);
        }
    }
    return cir;
}

// Enumerates every forced branch of `p` and returns (probability, state).
std::map<std::vector<int>, std::pair<double, cvec>> all_branches(const Pattern &p,
                                                                 const cvec &input) {
    const auto nodes = measured_nodes(p);
    std::map<std::vector<int>, std::pair<double, cvec>> out;
    const std::size_t k = nodes.size();
    for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
        std::map<int, int> forced;
        std::vector<int> key(k);
        for (std::size_t i = 0; i < k; ++i) {
            forced[nodes[i]] = static_cast<int>((mask >> i) & 1ull);
            key[i] = forced[nodes[i]];
        }
        auto res = execute(p, input, nullptr, &forced);
        out[key] = {res.branch_probability, res.full_state};
    }
    return out;
}

void expect_branchwise_equal(const Pattern &a, const Pattern &b, const cvec &input) {
    auto ba = all_branches(a, input);
    auto bb = all_branches(b, input);
    ASSERT_EQ(ba.size(), bb.size());
    for (const auto &[key, pa] : ba) {
        const auto &pb = bb.at(key);
        EXPECT_NEAR(pa.first, pb.first, 1e-10);
        if (pa.first > 1e-9)
            EXPECT_GT(fidelity_up_to_phase(pa.second, pb.second), 1.0 - 1e-10);
    }
}

cvec basis_zero(int nq) {
    cvec v = cvec::Zero(1l << nq);
    v(0) = 1.0;
    return v;
}

} // namespace

TEST(Pattern, WorkflowBuilds) {
    Pattern p = workflow_pattern();
    EXPECT_EQ(p.commands().size(), 9u);
    EXPECT_EQ(p.outputs(), std::vector<int>({3}));
}

TEST(Pattern, DoubleEdgeComposesToIdentity) {
    Pattern p({0, 1});
    p.e(0, 1);
    p.e(0, 1); // CZ^2 = I, allowed
    Rng rng(1, "mbqc-edge");
    cvec in(4);
    in << 0.5, 0.5, 0.5, 0.5;
    auto res = execute(p, in, &rng);
    EXPECT_GT(fidelity_up_to_phase(res.full_state, in), 1.0 - 1e-12);
}

TEST(Pattern, InvalidCommandsRejected) {
    Pattern p({0});
    EXPECT_THROW(p.m(7, 0.0), invalid_input);
    EXPECT_THROW(p.e(0, 5), invalid_input);
    p.n(1);
    EXPECT_THROW(p.n(1), invalid_input);
    p.m(0, 0.3);
    EXPECT_THROW(p.m(0, 0.1), invalid_input);
}

TEST(Transpile, HadamardGivesPlusState) {
    qubit::Circuit cir(1);
    cir.h(0);
    Pattern p = transpile(cir);
    for (int seed = 0; seed < 8; ++seed) {
        Rng rng(seed, "mbqc-h");
        auto res = execute(p, basis_zero(1), &rng);
        cvec plus(2);
        plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
        EXPECT_GT(fidelity_up_to_phase(res.full_state, plus), 1.0 - 1e-10) << seed;
    }
}

TEST(Transpile, EmptyCircuitIsIdentityPattern) {
    qubit::Circuit cir(2);
    Pattern p = transpile(cir);
    EXPECT_TRUE(p.commands().empty());
    EXPECT_EQ(p.outputs(), p.inputs());
}

TEST(Transpile, SingleRzStructure) {
    qubit::Circuit cir(1);
    cir.rz(0, 0.77);
    Pattern p = transpile(cir);
    // Rz emits two J steps; the first measurement carries angle -0.77
    int m_count = 0;
    double first_angle = 1e9;
    for (const auto &c : p.commands())
        if (c.kind == Command::M) {
            if (m_count == 0) first_angle = c.angle;
            ++m_count;
        }
    EXPECT_EQ(m_count, 2);
    EXPECT_NEAR(first_angle, -0.77, 1e-12);
    EXPECT_EQ(p.nodes().size(), 3u);
}

TEST(Transpile, TwoQubitWorkflowMatchesCircuit) {
    qubit::Circuit cir(2);
    cir.h(0);
    cir.h(1);
    cir.cnot(0, 1);
    Pattern p = transpile(cir);
    const cvec want = cir.forward().amplitudes();
    for (int seed = 0; seed < 100; ++seed) {
        Rng rng(seed, "mbqc-hhcnot");
        auto res = execute(p, basis_zero(2), &rng);
        ASSERT_GT(fidelity_up_to_phase(res.full_state, want), 1.0 - 1e-8) << seed;
    }
}

TEST(Transpile, UnsupportedGateRejected) {
    qubit::Circuit cir(3);
    cir.add(qubit::make_gate("x", {2}, {0, 1})); // multi-controlled
    EXPECT_THROW(transpile(cir), invalid_input);
}

TEST(Execute, DeterministicUnderSeed) {
    qubit::Circuit cir(3);
    cir.h(0);
    cir.cnot(0, 1);
    cir.ry(2, 0.9);
    cir.cz(1, 2);
    Pattern p = transpile(cir);
    Rng r1(42, "mbqc-det"), r2(42, "mbqc-det");
    auto a = execute(p, basis_zero(3), &r1);
    auto b = execute(p, basis_zero(3), &r2);
    EXPECT_EQ(a.outcomes, b.outcomes);
    EXPECT_LT((a.full_state - b.full_state).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Standardize, AlreadyStandardUnchanged) {
    Pattern p({0});
    p.n(1);
    p.e(0, 1);
    p.m(0, 0.4);
    Pattern q = standardize(p);
    ASSERT_EQ(q.commands().size(), p.commands().size());
    EXPECT_TRUE(q.is_standard());
    for (std::size_t i = 0; i < q.commands().size(); ++i)
        EXPECT_EQ(q.commands()[i].kind, p.commands()[i].kind);
}

TEST(Standardize, WorkflowPatternBranchEquality) {
    Pattern wild = workflow_pattern();
    Pattern std_p = standardize(wild);
    EXPECT_TRUE(std_p.is_standard());
    EXPECT_FALSE(wild.is_standard());
    cvec in(4);
    in << 0.5, 0.5, 0.5, 0.5;
    expect_branchwise_equal(wild, std_p, in);
}

TEST(Standardize, TranspiledCircuitsBranchEquality) {
    Rng rng(7, "mbqc-std");
    for (int trial = 0; trial < 10; ++trial) {
        // keep the measured-node count <= 8 so all branches fit
        qubit::Circuit cir = random_circuit(rng, 2, 3);
        Pattern wild = transpile(cir);
        if (measured_nodes(wild).size() > 8) continue;
        Pattern std_p = standardize(wild);
        EXPECT_TRUE(std_p.is_standard());
        expect_branchwise_equal(wild, std_p, basis_zero(2));
    }
}

TEST(ShiftSignals, RemovesTDomains) {
    Pattern std_p = standardize(workflow_pattern());
    Pattern shifted = shift_signals(std_p);
    for (const auto &c : shifted.commands())
        if (c.kind == Command::M) EXPECT_TRUE(c.t_domain.empty());
    cvec in(4);
    in << 0.5, 0.5, 0.5, 0.5;
    expect_branchwise_equal(std_p, shifted, in);
}

TEST(ShiftSignals, NoTDomainsIsNoOp) {
    Pattern p({0});
    p.n(1);
    p.e(0, 1);
    p.m(0, 1.2, Plane::XY, {}, {});
    Pattern q = shift_signals(p);
    EXPECT_EQ(q.commands().size(), p.commands().size());
    EXPECT_TRUE(q.commands()[2].t_domain.empty());
}

TEST(ShiftSignals, TranspiledBranchEquality) {
    Rng rng(11, "mbqc-shift");
    for (int trial = 0; trial < 8; ++trial) {
        qubit::Circuit cir = random_circuit(rng, 2, 3);
        Pattern wild = transpile(cir);
        if (measured_nodes(wild).size() > 8) continue;
        Pattern std_p = standardize(wild);
        Pattern shifted = shift_signals(std_p);
        expect_branchwise_equal(std_p, shifted, basis_zero(2));
    }
}

TEST(Equivalence, RandomCircuitsMatchStateVector) {
    Rng rng(13, "mbqc-equiv");
    int done = 0;
    for (int trial = 0; trial < 25; ++trial) {
        const int nq = 1 + static_cast<int>(rng.next_below(4));
        const int ngates = 3 + static_cast<int>(rng.next_below(8));
        qubit::Circuit cir = random_circuit(rng, nq, ngates);
        Pattern p = transpile(cir);
        const cvec want = cir.forward().amplitudes();
        Rng run_rng(trial, "mbqc-equiv-run");
        auto res = execute(p, basis_zero(nq), &run_rng);
        ASSERT_EQ(res.full_state.size(), want.size());
        EXPECT_GT(fidelity_up_to_phase(res.full_state, want), 1.0 - 1e-8)
            << "trial " << trial << " nq " << nq;
        ++done;
    }
    EXPECT_EQ(done, 25);
}

TEST(Equivalence, YzAndZxPlanesExecute) {
    // plane support smoke check: YZ measurement at angle 0 measures Y;
    // on |+i> the outcome is deterministic
    Pattern p({0});
    p.m(0, 0.0, Plane::YZ);
    cvec plus_i(2);
    plus_i << 1 / std::sqrt(2.0), cdouble(0, 1) / std::sqrt(2.0);
    Rng rng(3, "mbqc-yz");
    auto res = execute(p, plus_i, &rng);
    EXPECT_EQ(res.outcomes.at(0), 0);

    Pattern q({0});
    q.m(0, 0.0, Plane::ZX);
    Rng rng2(4, "mbqc-zx");
    auto res2 = execute(q, basis_zero(1), &rng2);
    EXPECT_EQ(res2.outcomes.at(0), 0); // ZX at angle 0 measures Z; |0> is +1
}
