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

#include <sstream>

#include <json.hpp>

#include "quasar/dist/harness.hpp"
#include "quasar/dist/qubit_dist.hpp"
#include "quasar/linalg/clements.hpp"
#include "quasar/mps/circuit.hpp"
#include "quasar/photonic/bosonic.hpp"
#include "quasar/photonic/fock_tensor.hpp"
#include "quasar/photonic/gbs.hpp"
#include "quasar/tdm/tdm.hpp"

namespace quasar::demos {

/// One checked property of a demo run.
struct Check {
    std::string property;
    bool pass = false;
    std::string detail;
};

struct DemoResult {
    std::string name;
    std::vector<Check> checks;
    nlohmann::json metrics;

    bool pass() const {
        for (const auto &c : checks)
            if (!c.pass) return false;
        return true;
    }
};

namespace detail {

inline void check(DemoResult &r, const std::string &property, bool ok, const std::string &detail) {
    r.checks.push_back({property, ok, detail});
}

template <typename T>
std::string str(T v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace detail

/// Six-mode dual-rail CNOT with ancilla modes 0 and 5: all four logical
/// transition amplitudes are 1/3 and post-selection succeeds with
/// probability 1/9.
inline DemoResult demo_cnot_dualrail() {
    using namespace photonic;
    DemoResult r;
    r.name = "cnot-dualrail";
    const double theta = 2.0 * std::acos(1.0 / std::sqrt(3.0));
    std::vector<PhotonicGate> gates{
        pgate("h", {3, 4}),  pgate("ps", {1}, {kPi}), pgate("bs_h", {0, 1}, {theta}),
        pgate("ps", {0}, {kPi}), pgate("ps", {3}, {kPi}), pgate("bs_h", {2, 3}, {theta}),
        pgate("ps", {2}, {kPi}), pgate("bs_h", {4, 5}, {theta}), pgate("h", {3, 4})};
    const cmat u = circuit_mode_unitary(gates, 6);
    const Occupation q00{0, 1, 0, 1, 0, 0}, q01{0, 1, 0, 0, 1, 0};
    const Occupation q10{0, 0, 1, 1, 0, 0}, q11{0, 0, 1, 0, 1, 0};
    const std::vector<std::pair<Occupation, Occupation>> transitions{
        {q00, q00}, {q01, q01}, {q10, q11}, {q11, q10}};
    double worst = 0.0;
    for (const auto &[in, out] : transitions) {
        const cdouble amp = fock_amplitude(u, in, out).value;
        worst = std::max(worst, std::abs(amp - cdouble(1.0 / 3.0, 0.0)));
        r.metrics["amplitudes"][ket_string(in) + "->" + ket_string(out)] = {amp.real(),
                                                                            amp.imag()};
    }
    detail::check(r, "four logical transition amplitudes = 1/3 within 1e-6", worst < 1e-6,
                  "max deviation " + detail::str(worst));
    auto keep = [](const Occupation &o) {
        return o[0] == 0 && o[5] == 0 && o[1] + o[2] == 1 && o[3] + o[4] == 1;
    };
    double worst_succ = 0.0;
    for (const auto &in : {q00, q01, q10, q11}) {
        auto sel = post_select(fock_prob_distribution(u, in), keep);
        worst_succ = std::max(worst_succ, std::abs(sel.success - 1.0 / 9.0));
    }
    r.metrics["post_selection_success"] = 1.0 / 9.0;
    detail::check(r, "post-selection success probability = 1/9 within 1e-9", worst_succ < 1e-9,
                  "max deviation " + detail::str(worst_succ));
    return r;
}

/// Rectangular-mesh decomposition round-trips: the fixed six-mode real
/// unitary plus Haar-random unitaries up to 8 modes.
inline DemoResult demo_clements(int haar_count = 50, std::uint64_t seed = 0) {
    DemoResult r;
    r.name = "clements";
    const double r3 = std::sqrt(3.0), r2 = std::sqrt(2.0);
    cmat u(6, 6);
    u << 1, 0, 1, -1, 0, 0,
         0, 1, 0, 0, 0, r2,
         1, 0, 0, 1, 1, 0,
        -1, 0, 1, 0, 1, 0,
         0, 0, 1, 1, -1, 0,
         0, r2, 0, 0, 0, -1;
    u /= r3;
    auto p = linalg::clements_decompose(u);
    const double err6 = (linalg::clements_reconstruct(p) - u).cwiseAbs().maxCoeff();
    r.metrics["six_mode_roundtrip_error"] = err6;
    detail::check(r, "six-mode unitary round-trips within 1e-8", err6 < 1e-8,
                  "error " + detail::str(err6));

    Rng rng(seed, "clements-demo");
    double worst = 0.0;
    for (int i = 0; i < haar_count; ++i) {
        const int m = 2 + static_cast<int>(rng.next_below(7)); // 2..8
        cmat g(m, m);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) g(a, b) = cdouble(rng.normal(), rng.normal());
        Eigen::HouseholderQR<cmat> qr(g);
        cmat q = qr.householderQ();
        cmat rr = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int c = 0; c < m; ++c) {
            const cdouble d = rr(c, c);
            q.col(c) *= (std::abs(d) > 0) ? d / std::abs(d) : cdouble(1, 0);
        }
        auto params = linalg::clements_decompose(q);
        worst = std::max(worst,
                         (linalg::clements_reconstruct(params) - q).cwiseAbs().maxCoeff());
    }
    r.metrics["haar_count"] = haar_count;
    r.metrics["haar_worst_roundtrip_error"] = worst;
    detail::check(r, "Haar-random unitaries round-trip within 1e-8", worst < 1e-8,
                  "worst " + detail::str(worst));
    return r;
}

/// Graph-encoded GBS on the six-node adjacency: the encoding hits the mean
/// photon target, the state's B matrix is proportional to the graph, and
/// sampling runs.
inline DemoResult demo_gbs_graph(std::uint64_t seed = 0, int shots = 200) {
    using namespace photonic;
    DemoResult r;
    r.name = "gbs-graph";
    rmat a(6, 6);
    a << 0, 1, 1, 0, 0, 0,
         1, 0, 0, 1, 0, 1,
         1, 0, 0, 0, 0, 0,
         0, 1, 0, 0, 1, 1,
         0, 0, 0, 1, 0, 0,
         0, 1, 0, 1, 0, 0;
    const double target = 3.0;
    auto enc = gbs_from_graph(a, target);
    GaussianState st = build_gbs_state(enc.spec);

    const cmat sigma = complex_covariance(st);
    double nbar = 0.0;
    for (int i = 0; i < 6; ++i) nbar += sigma(i, i).real() - 0.5;
    r.metrics["mean_photon"] = nbar;
    detail::check(r, "encoding hits the mean-photon target", std::abs(nbar - target) < 1e-6,
                  "got " + detail::str(nbar));

    const cmat b = gbs_b_matrix(st);
    double scale = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (a(i, j) != 0) scale = b(i, j).real() / a(i, j);
    const double berr = (b - scale * a.cast<cdouble>()).cwiseAbs().maxCoeff();
    r.metrics["b_matrix_error"] = berr;
    detail::check(r, "state A-matrix proportional to the adjacency within 1e-6", berr < 1e-6,
                  "error " + detail::str(berr));

    Rng rng(seed, "gbs-graph-demo");
    auto stats = sample_detector(st, "pnrd", shots, rng, 2);
    std::uint64_t total = 0;
    for (const auto &[occ, count] : stats.counts) {
        total += count;
        r.metrics["samples"][ket_string(occ)] = count;
    }
    detail::check(r, "sampling runs for every shot", total == static_cast<std::uint64_t>(shots),
                  detail::str(total) + " samples");
    return r;
}

/// EPR-by-delay-loop: step 0 swaps the loop vacuum out, afterwards
/// consecutive homodyne outcomes pair up to 1e-3 relative.
inline DemoResult demo_epr_tdm(std::uint64_t seed = 0) {
    DemoResult r;
    r.name = "epr-tdm";
    tdm::TDMProgram prog;
    prog.nmode = 1;
    prog.ops.push_back(photonic::pgate("s", {0}, {9.0}));
    prog.ops.push_back(tdm::delay(0, 1, {kPi / 2, kPi / 2}, /*encode=*/true));
    prog.measure_wires = {0};
    prog.measure_phis = {0.0};
    const std::vector<std::vector<double>> data{{kPi / 2, kPi / 2}, {kPi / 4, 0.0}};
    Rng rng(seed, "epr-demo");
    auto run = tdm::run_tdm(prog, 13, data, rng);
    double worst = 0.0;
    std::vector<double> flat;
    for (int k = 1; k + 1 < 13; k += 2) {
        const double a = run.samples(k, 0), b = run.samples(k + 1, 0);
        worst = std::max(worst, std::abs(a - b) / std::max(1e-300, std::abs(a)));
        flat.push_back(a);
        flat.push_back(b);
    }
    r.metrics["samples_after_step0"] = flat;
    r.metrics["worst_pair_relative_difference"] = worst;
    detail::check(r, "consecutive sample pairs equal within 1e-3 relative", worst < 1e-3,
                  "worst " + detail::str(worst));
    return r;
}

/// Two-dimensional cluster state over 100 steps: the published nullifier
/// combination has variance < 1e-5 and |mean| < 1e-3.
inline DemoResult demo_cluster_tdm(std::uint64_t seed = 0, double squeeze = 8.0, int nstep = 100) {
    DemoResult r;
    r.name = "cluster-tdm";
    tdm::TDMProgram prog;
    prog.nmode = 4;
    for (int i = 0; i < 4; ++i) prog.ops.push_back(photonic::pgate("s", {i}, {squeeze}));
    prog.ops.push_back(photonic::pgate("r", {0}, {kPi / 2}));
    prog.ops.push_back(photonic::pgate("r", {2}, {kPi / 2}));
    prog.ops.push_back(photonic::pgate("bs", {0, 1}, {kPi / 4, 0.0}));
    prog.ops.push_back(photonic::pgate("bs", {2, 3}, {kPi / 4, 0.0}));
    prog.ops.push_back(photonic::pgate("bs", {1, 2}, {kPi / 4, 0.0}));
    prog.ops.push_back(tdm::delay(1, 1, {kPi / 2, kPi}));
    prog.ops.push_back(tdm::delay(2, 5, {kPi / 2, kPi}));
    prog.ops.push_back(photonic::pgate("bs", {0, 1}, {kPi / 4, 0.0}));
    prog.ops.push_back(photonic::pgate("bs", {2, 3}, {kPi / 4, 0.0}));
    prog.measure_wires = {0, 1, 2, 3};
    prog.measure_phis = {0.0, 0.0, 0.0, 0.0};
    Rng rng(seed, "cluster-demo");
    auto run = tdm::run_tdm(prog, nstep, {}, rng);

    std::vector<double> err;
    for (int i = 0; i + 5 < nstep; ++i) {
        const double lhs = run.samples(i, 0) + run.samples(i, 1);
        const double rhs = (-run.samples(i + 1, 0) + run.samples(i + 1, 1) +
                            run.samples(i + 5, 2) + run.samples(i + 5, 3)) /
                           std::sqrt(2.0);
        err.push_back(lhs - rhs);
    }
    double mean = 0.0;
    for (double e : err) mean += e;
    mean /= err.size();
    double var = 0.0;
    for (double e : err) var += (e - mean) * (e - mean);
    var /= err.size() - 1;
    r.metrics["nullifier_variance"] = var;
    r.metrics["nullifier_mean"] = mean;
    detail::check(r, "nullifier residual variance < 1e-5", var < 1e-5, detail::str(var));
    detail::check(r, "nullifier residual |mean| < 1e-3", std::abs(mean) < 1e-3,
                  detail::str(mean));
    return r;
}

namespace detail {

inline double bosonic_marginal_q(const photonic::BosonicState &s, int wire, double q) {
    cdouble acc(0, 0);
    const int m = s.nmode();
    (void)m;
    for (const auto &c : s.components()) {
        const double var = c.cov(wire, wire);
        const cdouble dq = q - c.mean(wire);
        acc += c.weight * std::exp(-0.5 * dq * dq / var) / std::sqrt(2.0 * kPi * var);
    }
    return acc.real();
}

inline int marginal_peak_count(const photonic::BosonicState &s, int wire, double lo, double hi,
                               int npts) {
    std::vector<double> f(npts);
    double fmax = 0.0;
    for (int i = 0; i < npts; ++i) {
        f[i] = bosonic_marginal_q(s, wire, lo + (hi - lo) * i / (npts - 1));
        fmax = std::max(fmax, f[i]);
    }
    int peaks = 0;
    for (int i = 1; i + 1 < npts; ++i)
        if (f[i] > f[i - 1] && f[i] >= f[i + 1] && f[i] > 1e-3 * fmax) ++peaks;
    return peaks;
}

inline photonic::BosonicState breed_once(const photonic::BosonicState &input, double hbar) {
    using namespace photonic;
    BosonicState two = BosonicState::combine(input, input);
    two = evolve_bosonic(two, symplectic_of(pgate("bs", {0, 1}, {kPi / 4, 0.0}), 2, hbar));
    return condition_homodyne(two, 0, 0.0, kPi / 2, 0.001 * std::sqrt(hbar)).state;
}

} // namespace detail

/// GKP generation by breeding squeezed cats: the marginal comb gains peaks
/// with every breeding round.
inline DemoResult demo_gkp_breeding() {
    using namespace photonic;
    DemoResult r;
    r.name = "gkp-breeding";
    const double hbar = 2.0, rsq = 1.5, alpha = 2.0;
    const double alpha_prime = (std::cosh(rsq) + std::sinh(rsq)) * alpha / 2.0;

    BosonicState squeezed_cat = init_cat(alpha_prime, 0.0, 0, hbar);
    squeezed_cat = evolve_bosonic(squeezed_cat, symplectic_of(pgate("s", {0}, {rsq}), 1, hbar));
    const int p0 = detail::marginal_peak_count(squeezed_cat, 0, -12, 12, 1201);

    BosonicState bred1 = detail::breed_once(squeezed_cat, hbar);
    const int p1 = detail::marginal_peak_count(bred1, 0, -12, 12, 1201);
    BosonicState bred2 = detail::breed_once(bred1, hbar);
    const int p2 = detail::marginal_peak_count(bred2, 0, -12, 12, 1201);

    r.metrics["peaks_input_cat"] = p0;
    r.metrics["peaks_first_breeding"] = p1;
    r.metrics["peaks_second_breeding"] = p2;
    r.metrics["components_second_breeding"] = bred2.components().size();
    detail::check(r, "comb peak count strictly increases per breeding", p0 < p1 && p1 < p2,
                  detail::str(p0) + " -> " + detail::str(p1) + " -> " + detail::str(p2));
    return r;
}

/// GKP |0> by post-selection at the published parameters: four squeezed
/// modes, cutoff 50, PNRD outcomes (4, 2, 4) on modes 1-3; the surviving
/// mode-0 state normalizes and its Wigner function dips negative.
inline DemoResult demo_gkp_postselect() {
    using namespace photonic;
    DemoResult r;
    r.name = "gkp-postselect";
    const int cutoff = 50;
    const std::vector<double> squeeze{1.0678, 0.9997, 1.1976, 0.8253};
    const std::vector<double> theta{2.4144, 0.4863};
    std::vector<PhotonicGate> gates;
    for (int i = 0; i < 4; ++i) gates.push_back(pgate("s", {i}, {squeeze[i]}));
    gates.push_back(pgate("ps", {1}, {kPi / 2}));
    gates.push_back(pgate("ps", {2}, {kPi / 2}));
    gates.push_back(pgate("ps", {3}, {kPi / 2}));
    gates.push_back(pgate("bs", {0, 1}, {theta[0], 0.0}));
    gates.push_back(pgate("bs", {1, 2}, {theta[1], 0.0}));
    gates.push_back(pgate("bs", {2, 3}, {kPi / 4, 0.0}));
    gates.push_back(pgate("ps", {0}, {kPi / 2}));

    FockTensorState st = run_tensor_circuit(FockTensorState::vacuum(4, cutoff), gates);
    auto sel = post_select_tensor(st, {{1, 4}, {2, 2}, {3, 4}});
    r.metrics["post_selection_probability"] = sel.success;
    r.metrics["truncation_loss"] = st.truncation_loss();
    const double norm = std::sqrt(sel.state.norm2());
    detail::check(r, "post-selected state renormalizes", std::abs(norm - 1.0) < 1e-9,
                  "norm " + detail::str(norm));

    const auto &amps = sel.state.amplitudes();
    double min_w = 1e9, max_w = -1e9;
    for (int i = 0; i <= 80; ++i)
        for (int j = 0; j <= 80; ++j) {
            const double x = -8.0 + 16.0 * i / 80.0, p = -8.0 + 16.0 * j / 80.0;
            const double w = wigner_from_fock(amps, x, p);
            min_w = std::min(min_w, w);
            max_w = std::max(max_w, w);
        }
    r.metrics["wigner_min"] = min_w;
    r.metrics["wigner_max"] = max_w;
    detail::check(r, "Wigner function has a strictly negative minimum", min_w < -1e-4,
                  "min " + detail::str(min_w));
    return r;
}

/// TFIM quench on the MPS backend against the dense oracle at N = 12.
inline DemoResult demo_tfim_mps(int nsteps = 20) {
    DemoResult r;
    r.name = "tfim-mps";
    const int n = 12;
    const double j = 1.0, h = 1.2, dt = 0.1;
    mps::MPSState s = mps::MPSState::product(std::vector<int>(n, 0), 2, 64);
    for (int i = 0; i < n; ++i) mps::apply_gate_mps(s, qubit::make_gate("h", {i}));
    qubit::Circuit hlayer(n);
    for (int i = 0; i < n; ++i) hlayer.h(i);
    qubit::QubitState dense = hlayer.forward();

    double worst = 0.0;
    std::vector<double> trajectory;
    for (int step = 0; step < nsteps; ++step) {
        mps::tfim_trotter_step(s, j, h, dt);
        qubit::Circuit stepc(n);
        for (int i = 0; i < n; ++i) stepc.rx(i, h * dt);
        for (int i = 0; i + 1 < n; i += 2) stepc.rzz(i, i + 1, 2 * j * dt);
        for (int i = 1; i + 1 < n; i += 2) stepc.rzz(i, i + 1, 2 * j * dt);
        stepc.rzz(n - 1, 0, 2 * j * dt);
        for (int i = 0; i < n; ++i) stepc.rx(i, h * dt);
        dense = stepc.forward(dense);

        const double m_mps = mps::average_x_magnetization(s);
        double m_dense = 0.0;
        for (int i = 0; i < n; ++i) m_dense += qubit::expectation_one(dense, {{i}, "x"});
        m_dense /= n;
        worst = std::max(worst, std::abs(m_mps - m_dense));
        trajectory.push_back(m_mps);
    }
    r.metrics["magnetization"] = trajectory;
    r.metrics["max_error_vs_dense"] = worst;
    detail::check(r, "magnetization matches the dense oracle within 1e-6 over 20 steps",
                  worst < 1e-6, "max " + detail::str(worst));
    return r;
}

/// Distributed QFT at n = 12, R = 4: the gathered state equals the
/// single-rank run to 1e-12 and is the uniform superposition.
inline DemoResult demo_qft_dist(int nqubit = 12, int ranks = 4) {
    DemoResult r;
    r.name = "qft-dist";
    qubit::Circuit qft = qubit::qft_circuit(nqubit);
    const cvec want = qft.forward().amplitudes();
    double maxdiff = 1e9, uniform_err = 1e9;
    dist::run_on_ranks(ranks, [&](dist::Transport &tr) {
        dist::PartitionedState st = dist::run_circuit_dist(tr, qft);
        cvec got = dist::gather_amplitudes(st);
        if (tr.rank() == 0) {
            maxdiff = (got - want).cwiseAbs().maxCoeff();
            uniform_err = 0.0;
            const double target = std::pow(2.0, -nqubit / 2.0);
            for (long i = 0; i < got.size(); ++i)
                uniform_err = std::max(uniform_err, std::abs(std::abs(got(i)) - target));
        }
    });
    r.metrics["max_difference_vs_single_rank"] = maxdiff;
    r.metrics["uniform_amplitude_error"] = uniform_err;
    detail::check(r, "gathered state equals single-rank within 1e-12", maxdiff < 1e-12,
                  detail::str(maxdiff));
    detail::check(r, "QFT of |0...0> is the uniform superposition", uniform_err < 1e-10,
                  detail::str(uniform_err));
    return r;
}

inline DemoResult run_demo(const std::string &name, std::uint64_t seed = 0) {
    if (name == "cnot-dualrail") return demo_cnot_dualrail();
    if (name == "clements") return demo_clements(50, seed);
    if (name == "gbs-graph") return demo_gbs_graph(seed);
    if (name == "epr-tdm") return demo_epr_tdm(seed);
    if (name == "cluster-tdm") return demo_cluster_tdm(seed);
    if (name == "gkp-breeding") return demo_gkp_breeding();
    if (name == "gkp-postselect") return demo_gkp_postselect();
    if (name == "tfim-mps") return demo_tfim_mps();
    if (name == "qft-dist") return demo_qft_dist();
    throw invalid_input("unknown demo: " + name);
}

inline const std::vector<std::string> &demo_names() {
    static const std::vector<std::string> names{
        "cnot-dualrail", "clements",  "gbs-graph",      "epr-tdm",  "cluster-tdm",
        "gkp-breeding",  "gkp-postselect", "tfim-mps", "qft-dist"};
    return names;
}

} // namespace quasar::demos
