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
//
// Command-line front end: run / demo / bench / transpile / unroll /
// decompose. Exit codes: 0 success, 1 failed demo or internal error,
// 2 schema violation, 3 numerical guard, 4 transport failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "quasar/demos.hpp"
#include "quasar/dist/harness.hpp"
#include "quasar/dist/qubit_dist.hpp"
#include "quasar/io/circuit_file.hpp"
#include "quasar/io/pattern_io.hpp"
#include "quasar/io/result_file.hpp"
#include "quasar/linalg/batch.hpp"
#include "quasar/mbqc/execute.hpp"
#include "quasar/mbqc/transpile.hpp"
#include "quasar/mps/circuit.hpp"
#include "quasar/photonic/gaussian_prob.hpp"
#include "quasar/photonic/gbs.hpp"
#include "quasar/tdm/tdm.hpp"

using namespace quasar;

namespace {

struct RunOptions {
    std::uint64_t seed = 0;
    int shots = -1;    // -1: take from file
    int ranks = 1;
    int threads = 1;
    int chi = 0;       // 0: take from file
    int cutoff = 0;    // 0: take from file
    bool timings = false;
    std::string out;
    std::string samples_out;
    std::string wigner_out;
    int wigner_wire = 0;
    double wigner_halfwidth = 6.0;
    int wigner_points = 81;
};

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

qubit::Circuit build_qubit_circuit(const io::CircuitFile &f) {
    qubit::Circuit cir(f.nqubit);
    for (const auto &g : f.qubit_ops) cir.add(g);
    for (const auto &o : f.observables) cir.observable(o.wires, o.basis);
    return cir;
}

std::vector<int> all_wires(int n) {
    std::vector<int> w(n);
    for (int i = 0; i < n; ++i) w[i] = i;
    return w;
}

io::ResultFile run_qubit(const io::CircuitFile &f, const RunOptions &opt) {
    io::ResultFile result("run:qubit", opt.seed);
    qubit::Circuit cir = build_qubit_circuit(f);
    const int shots = opt.shots >= 0 ? opt.shots : f.shots;
    const std::vector<int> wires = f.measure_wires.empty() ? all_wires(f.nqubit) : f.measure_wires;
    const bool differentiable = cir.encode_slots() > 0 || !cir.trainable_params().empty();

    if (opt.ranks > 1) {
        require(f.backend.empty() || f.backend == "dense",
                "distributed runs use the dense backend");
        require(f.data.size() <= 1, "distributed runs take at most one data row");
        const std::vector<double> row = f.data.empty() ? std::vector<double>{} : f.data[0];
        std::map<std::string, qubit::MeasureEntry> counts;
        std::vector<double> exps;
        qubit::AdjointGradients grads;
        cvec state;
        dist::run_on_ranks(opt.ranks, [&](dist::Transport &tr) {
            dist::PartitionedState st = dist::run_circuit_dist(tr, cir, row);
            if (shots > 0) {
                Rng rng(opt.seed, "measure");
                auto c = dist::measure_dist(st, shots, wires, rng, true);
                if (tr.rank() == 0) counts = std::move(c);
            }
            if (!cir.observables().empty()) {
                auto e = dist::expectation_dist(st, cir.observables());
                if (tr.rank() == 0) exps = std::move(e);
            }
            if (differentiable && !cir.observables().empty()) {
                auto g = dist::adjoint_gradients_dist(tr, cir, row);
                if (tr.rank() == 0) grads = std::move(g);
            }
            if (f.nqubit <= 20) {
                cvec full = dist::gather_amplitudes(st);
                if (tr.rank() == 0) state = std::move(full);
            }
        });
        result.root()["job"]["ranks"] = opt.ranks;
        if (shots > 0) {
            std::map<std::string, std::uint64_t> cmap;
            std::map<std::string, double> pmap;
            for (const auto &[k, v] : counts) {
                if (v.count) cmap[k] = v.count;
                pmap[k] = v.probability;
            }
            result.add_counts(cmap);
            result.add_probabilities(pmap);
        }
        if (!exps.empty()) result.add_expectations(exps);
        if (differentiable && !cir.observables().empty())
            result.add_gradients(grads.param_grads, grads.data_grads);
        if (state.size() > 0) result.add_state(state);
        return result;
    }

    if (f.backend == "mps") {
        const int chi = opt.chi > 0 ? opt.chi : f.chi;
        mps::MPSState st = mps::run_circuit_mps(cir, chi);
        std::vector<double> exps;
        for (const auto &o : cir.observables()) exps.push_back(mps::expectation_local(st, o));
        if (!exps.empty()) result.add_expectations(exps);
        nlohmann::json shapes = nlohmann::json::array();
        for (const auto &sh : st.shapes()) shapes.push_back({sh[0], sh[1], sh[2]});
        result.root()["diagnostics"]["bond_shapes"] = shapes;
        result.add_diagnostic("truncation_error", st.truncation_error());
        return result;
    }

    qubit::QubitState state = cir.forward(f.data);
    if (shots > 0) {
        Rng rng(opt.seed, "measure");
        auto counts = qubit::measure(state, shots, wires, rng, true);
        std::map<std::string, std::uint64_t> cmap;
        std::map<std::string, double> pmap;
        for (const auto &[k, v] : counts) {
            if (v.count) cmap[k] = v.count;
            pmap[k] = v.probability;
        }
        result.add_counts(cmap);
        result.add_probabilities(pmap);
    }
    if (!cir.observables().empty()) result.add_expectations(qubit::expectation(state, cir));
    if (differentiable && !cir.observables().empty() && f.data.size() <= 1) {
        auto grads = qubit::adjoint_gradients(cir, qubit::QubitState::basis(f.nqubit),
                                              f.data.empty() ? std::vector<double>{} : f.data[0]);
        result.add_gradients(grads.param_grads, grads.data_grads);
    }
    if (f.nqubit <= 16 && f.data.size() <= 1 && !state.is_mixed())
        result.add_state(state.amplitudes(0));
    return result;
}

io::ResultFile run_fock(const io::CircuitFile &f, const RunOptions &opt) {
    using namespace photonic;
    io::ResultFile result("run:fock", opt.seed);
    const int shots = opt.shots >= 0 ? opt.shots : f.shots;
    const int cutoff = opt.cutoff > 0 ? opt.cutoff : f.cutoff;

    if (f.backend.empty() || f.backend == "basis") {
        require(!f.init_occupation.empty(), "fock basis backend needs an occupation init_state");
        const cmat u = circuit_mode_unitary(f.photonic_ops, f.nmode);
        auto dist = fock_prob_distribution(u, f.init_occupation);
        std::map<std::string, double> pmap;
        for (const auto &[occ, p] : dist) pmap[ket_string(occ)] = p;
        result.add_probabilities(pmap);
        if (!f.select.empty()) {
            auto sel = post_select(dist, [&](const Occupation &occ) {
                for (const auto &[mode, value] : f.select)
                    if (occ[mode] != value) return false;
                return true;
            });
            result.add_diagnostic("post_selection_probability", sel.success);
        }
        if (shots > 0) {
            Rng rng(opt.seed, "fock-sample");
            std::vector<const Occupation *> keys;
            std::vector<double> weights;
            for (const auto &[occ, p] : dist) {
                keys.push_back(&occ);
                weights.push_back(p);
            }
            std::map<std::string, std::uint64_t> counts;
            for (int s = 0; s < shots; ++s) counts[ket_string(*keys[rng.discrete(weights)])] += 1;
            result.add_counts(counts);
        }
        return result;
    }

    require(f.backend == "tensor", "fock backend is 'basis' or 'tensor'");
    FockTensorState st = f.init_occupation.empty()
                             ? FockTensorState::vacuum(f.nmode, cutoff)
                             : FockTensorState::from_occupation(f.init_occupation, cutoff);
    st = run_tensor_circuit(st, f.photonic_ops);
    result.add_diagnostic("truncation_loss", st.truncation_loss());
    if (!f.select.empty()) {
        auto sel = post_select_tensor(st, f.select);
        result.add_diagnostic("post_selection_probability", sel.success);
        if (sel.state.dim() <= 4096) {
            cvec amps(sel.state.dim());
            for (std::size_t i = 0; i < sel.state.dim(); ++i) amps(i) = sel.state.amplitudes()[i];
            result.add_state(amps);
        }
        return result;
    }
    auto dist = tensor_distribution(st);
    std::map<std::string, double> pmap;
    for (const auto &[occ, p] : dist)
        if (p > 1e-12) pmap[ket_string(occ)] = p;
    result.add_probabilities(pmap);
    if (shots > 0) {
        Rng rng(opt.seed, "fock-sample");
        std::vector<const Occupation *> keys;
        std::vector<double> weights;
        for (const auto &[occ, p] : dist) {
            keys.push_back(&occ);
            weights.push_back(p);
        }
        std::map<std::string, std::uint64_t> counts;
        for (int s = 0; s < shots; ++s) counts[ket_string(*keys[rng.discrete(weights)])] += 1;
        result.add_counts(counts);
    }
    return result;
}

io::ResultFile run_gaussian(const io::CircuitFile &f, const RunOptions &opt) {
    using namespace photonic;
    io::ResultFile result("run:gaussian", opt.seed);
    const int shots = opt.shots >= 0 ? opt.shots : f.shots;
    const int cutoff = opt.cutoff > 0 ? opt.cutoff : f.cutoff;

    GaussianState state = GaussianState::vacuum(std::max(f.nmode, 1), f.hbar);
    if (f.adjacency.rows() > 0) {
        const double target = f.mean_photon > 0 ? f.mean_photon : f.adjacency.rows() / 2.0;
        auto enc = gbs_from_graph(f.adjacency, target);
        state = build_gbs_state(enc.spec, f.hbar);
        result.add_diagnostic("graph_scale", enc.scale);
        result.add_diagnostic("mean_photon_target", target);
    } else if (!f.squeezing.empty()) {
        GBSSpec spec;
        spec.nmode = f.nmode;
        spec.squeezing = f.squeezing;
        spec.unitary = f.unitary.rows() > 0 ? f.unitary : cmat::Identity(f.nmode, f.nmode);
        state = build_gbs_state(spec, f.hbar);
    }
    state = run_gaussian_circuit(state, f.photonic_ops);
    result.add_diagnostic("uncertainty_floor", state.uncertainty_floor());

    const std::string detector = f.detector.empty() ? "pnrd" : f.detector;
    if (detector == "homodyne") {
        require(!f.measure_wires.empty(), "homodyne detector needs a measure block");
        Rng rng(opt.seed, "homodyne");
        const int n = std::max(shots, 1);
        rmat samples(n, f.measure_wires.size());
        for (int s = 0; s < n; ++s) {
            auto m = measure_homodyne(state, f.measure_wires, f.measure_phis, rng);
            for (int j = 0; j < m.samples.size(); ++j) samples(s, j) = m.samples(j);
        }
        result.add_homodyne_samples(samples);
        return result;
    }
    require(detector == "pnrd" || detector == "threshold", "unknown detector " + detector);
    if (shots > 0) {
        Rng rng(opt.seed, "sample");
        auto stats = sample_detector(state, detector, shots, rng, cutoff);
        std::map<std::string, std::uint64_t> counts;
        for (const auto &[occ, c] : stats.counts) counts[ket_string(occ)] = c;
        result.add_counts(counts);
        result.add_diagnostic("leaked_mass", stats.leaked_mass);
    }
    return result;
}

io::ResultFile run_bosonic(const io::CircuitFile &f, const RunOptions &opt) {
    using namespace photonic;
    io::ResultFile result("run:bosonic", opt.seed);
    std::vector<BosonicState> modes;
    for (int i = 0; i < f.nmode; ++i) modes.push_back(BosonicState::vacuum(1, f.hbar));
    bool combined = false;
    BosonicState state = BosonicState::vacuum(1, f.hbar);
    double acceptance = 1.0;

    auto ensure_combined = [&]() {
        if (combined) return;
        state = modes[0];
        for (int i = 1; i < f.nmode; ++i) state = BosonicState::combine(state, modes[i]);
        combined = true;
    };

    for (const auto &g : f.photonic_ops) {
        if (g.name == "cat" || g.name == "gkp") {
            require(!combined, "bosonic init gates must precede entangling ops");
            require(g.wires.size() == 1, g.name + ": one wire");
            if (g.name == "cat") {
                require(g.params.size() >= 1, "cat: params [r, theta, parity]");
                const double r = g.params[0];
                const double theta = g.params.size() > 1 ? g.params[1] : 0.0;
                const int parity = g.params.size() > 2 ? static_cast<int>(g.params[2]) : 0;
                modes[g.wires[0]] = init_cat(r, theta, parity, f.hbar);
            } else {
                GKPSpec spec;
                if (!g.params.empty()) spec.theta = g.params[0];
                if (g.params.size() > 1) spec.phi = g.params[1];
                if (g.params.size() > 2) spec.epsilon = g.params[2];
                if (g.params.size() > 3) spec.amp_cutoff = g.params[3];
                modes[g.wires[0]] = init_gkp(spec, f.hbar);
            }
            continue;
        }
        ensure_combined();
        if (g.name == "homodyne") {
            require(g.wires.size() == 1 && !g.params.empty(),
                    "homodyne: one wire, params [phi, value, window]");
            const double phi = g.params[0];
            const double value = g.params.size() > 1 ? g.params[1] : 0.0;
            const double window = g.params.size() > 2 ? g.params[2] : 0.0;
            auto cond = condition_homodyne(state, g.wires[0], value, phi, window);
            state = std::move(cond.state);
            acceptance *= cond.acceptance;
            continue;
        }
        state = evolve_bosonic(state, symplectic_of(g, state.nmode(), f.hbar));
    }
    ensure_combined();

    result.add_diagnostic("components", static_cast<double>(state.components().size()));
    result.add_diagnostic("acceptance", acceptance);
    result.add_diagnostic("weight_sum_deviation", std::abs(state.weight_sum() - cdouble(1, 0)));

    if (!opt.wigner_out.empty()) {
        std::vector<double> xs(opt.wigner_points), ps(opt.wigner_points);
        for (int i = 0; i < opt.wigner_points; ++i)
            xs[i] = ps[i] =
                -opt.wigner_halfwidth + 2 * opt.wigner_halfwidth * i / (opt.wigner_points - 1);
        rmat w = wigner(state, opt.wigner_wire, xs, ps);
        std::ofstream out(opt.wigner_out);
        require(out.good(), "cannot open " + opt.wigner_out);
        out << "x,p,w\n" << std::setprecision(17);
        for (int i = 0; i < opt.wigner_points; ++i)
            for (int j = 0; j < opt.wigner_points; ++j)
                out << xs[i] << ',' << ps[j] << ',' << w(i, j) << '\n';
        result.add_diagnostic("wigner_csv", opt.wigner_out);
        result.add_diagnostic("wigner_min", w.minCoeff());
    }
    return result;
}

io::ResultFile run_tdm(const io::CircuitFile &f, const RunOptions &opt) {
    io::ResultFile result("run:tdm", opt.seed);
    tdm::TDMProgram prog;
    prog.nmode = f.nmode;
    prog.hbar = f.hbar;
    prog.ops = f.photonic_ops;
    for (auto &g : prog.ops)
        if (g.name == "delay") {
            require(g.ntau >= 1, "delay needs ntau >= 1");
        }
    prog.measure_wires = f.measure_wires;
    prog.measure_phis = f.measure_phis;
    Rng rng(opt.seed, "tdm");
    auto run = tdm::run_tdm(prog, f.nstep, f.data, rng);
    result.add_homodyne_samples(run.samples);
    if (!opt.samples_out.empty()) {
        std::ofstream out(opt.samples_out);
        require(out.good(), "cannot open " + opt.samples_out);
        out << "step,wire,value\n" << std::setprecision(17);
        for (int s = 0; s < run.samples.rows(); ++s)
            for (int j = 0; j < run.samples.cols(); ++j)
                out << s << ',' << prog.measure_wires[j] << ',' << run.samples(s, j) << '\n';
        result.add_diagnostic("samples_csv", opt.samples_out);
    }
    return result;
}

io::ResultFile run_mbqc(const io::CircuitFile &f, const RunOptions &opt) {
    io::ResultFile result("run:mbqc", opt.seed);
    std::string text = "INPUT";
    for (int n : f.pattern_inputs) text += ' ' + std::to_string(n);
    text += '\n';
    for (const auto &line : f.pattern_lines) text += line + '\n';
    mbqc::Pattern p = io::pattern_from_text(text);
    Rng rng(opt.seed, "mbqc");
    auto res = mbqc::execute(p, rng);
    result.add_state(res.full_state);
    nlohmann::json outs = nlohmann::json::array();
    for (int n : res.node_order) outs.push_back(n);
    result.root()["mbqc"]["output_nodes"] = outs;
    for (const auto &[node, outcome] : res.outcomes)
        result.root()["mbqc"]["outcomes"][std::to_string(node)] = outcome;
    result.add_diagnostic("branch_probability", res.branch_probability);
    return result;
}

int cmd_run(const std::string &path, RunOptions opt) {
    const double t0 = now_ms();
    io::CircuitFile f = io::load_circuit_file(path);
    io::ResultFile result = [&] {
        if (f.paradigm == "qubit") return run_qubit(f, opt);
        if (f.paradigm == "fock") return run_fock(f, opt);
        if (f.paradigm == "gaussian") return run_gaussian(f, opt);
        if (f.paradigm == "bosonic") return run_bosonic(f, opt);
        if (f.paradigm == "tdm") return run_tdm(f, opt);
        return run_mbqc(f, opt);
    }();
    result.root()["job"]["paradigm"] = f.paradigm;
    result.root()["job"]["threads"] = opt.threads;
    if (opt.timings) result.set_timing("total", now_ms() - t0);
    if (opt.out.empty())
        std::cout << result.serialize();
    else
        result.write(opt.out);
    return 0;
}

int cmd_demo(const std::string &name, std::uint64_t seed, const std::string &out) {
    auto res = demos::run_demo(name, seed);
    for (const auto &c : res.checks)
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << res.name << ": " << c.property << " ("
                  << c.detail << ")\n";
    if (!out.empty()) {
        io::ResultFile file("demo:" + res.name, seed);
        file.root()["metrics"] = res.metrics;
        file.root()["pass"] = res.pass();
        file.write(out);
    }
    return res.pass() ? 0 : 1;
}

int cmd_bench(const std::string &kernel, std::vector<int> sizes, int batch, int repeats,
              std::uint64_t seed, int threads, const std::string &out) {
    require(repeats >= 1 && batch >= 1, "bench: repeats and batch must be positive");
    std::ostringstream csv;
    csv << "kernel,size,batch,repeats,median_ms,mean_ms\n";
    Rng rng(seed, "bench");
    for (int size : sizes) {
        auto make_matrix = [&](bool symmetric) {
            cmat m(size, size);
            for (int i = 0; i < size; ++i)
                for (int j = 0; j < size; ++j) m(i, j) = cdouble(rng.normal(), rng.normal());
            if (symmetric) m = 0.5 * (m + m.transpose());
            return m;
        };
        std::function<void()> work;
        if (kernel == "permanent" || kernel == "hafnian" || kernel == "torontonian") {
            linalg::BatchedMatrices ms;
            for (int b = 0; b < batch; ++b) {
                if (kernel == "permanent") ms.push_back(make_matrix(false));
                else if (kernel == "hafnian") ms.push_back(make_matrix(true));
                else {
                    cmat m = make_matrix(true);
                    ms.push_back(0.3 * m / std::max(1.0, m.cwiseAbs().maxCoeff() * size));
                }
            }
            work = [=, &ms]() {
                std::function<cdouble(const cmat &)> f;
                if (kernel == "permanent") f = [](const cmat &m) { return linalg::permanent(m); };
                else if (kernel == "hafnian") f = [](const cmat &m) { return linalg::hafnian(m); };
                else f = [](const cmat &m) { return linalg::torontonian(m); };
                linalg::batched(f, ms, threads);
            };
        } else if (kernel == "grad") {
            auto cir = std::make_shared<qubit::Circuit>(size);
            for (int i = 0; i < size; ++i) cir->ry(i, 0.3 + i, true);
            for (int i = 0; i < size; ++i) cir->cnot(i, (i + 1) % size);
            for (int i = 0; i < size; ++i) cir->rz(i, 0.1 * i, true);
            cir->observable({0}, "z");
            work = [cir]() { qubit::adjoint_gradients(*cir, qubit::QubitState::basis(cir->nqubit())); };
        } else if (kernel == "mps-step") {
            work = [size]() {
                mps::MPSState s = mps::MPSState::product(std::vector<int>(size, 0), 2, 32);
                for (int i = 0; i < size; ++i) mps::apply_gate_mps(s, qubit::make_gate("h", {i}));
                mps::tfim_trotter_step(s, 1.0, 1.2, 0.1);
            };
        } else {
            throw invalid_input("bench: unknown kernel " + kernel);
        }
        work(); // warm-up excluded from timing
        std::vector<double> times;
        for (int r = 0; r < repeats; ++r) {
            const double t0 = now_ms();
            work();
            times.push_back(now_ms() - t0);
        }
        std::sort(times.begin(), times.end());
        double mean = 0;
        for (double t : times) mean += t;
        mean /= times.size();
        const double median = times[times.size() / 2];
        csv << kernel << ',' << size << ',' << batch << ',' << repeats << ',' << median << ','
            << mean << '\n';
    }
    if (out.empty())
        std::cout << csv.str();
    else {
        std::ofstream f(out);
        require(f.good(), "bench: cannot open " + out);
        f << csv.str();
    }
    return 0;
}

int cmd_transpile(const std::string &path, const std::string &out, bool do_standardize,
                  bool do_shift) {
    io::CircuitFile f = io::load_circuit_file(path);
    require(f.paradigm == "qubit", "transpile expects a qubit circuit file");
    qubit::Circuit cir = build_qubit_circuit(f);
    mbqc::Pattern p = mbqc::transpile(cir);
    if (do_standardize || do_shift) p = mbqc::standardize(p);
    if (do_shift) p = mbqc::shift_signals(p);
    const std::string text = io::pattern_to_text(p);
    if (out.empty())
        std::cout << text;
    else {
        std::ofstream o(out);
        require(o.good(), "transpile: cannot open " + out);
        o << text;
    }
    return 0;
}

int cmd_unroll(const std::string &path, int nstep_override, const std::string &out) {
    io::CircuitFile f = io::load_circuit_file(path);
    require(f.paradigm == "tdm", "unroll expects a tdm circuit file");
    tdm::TDMProgram prog;
    prog.nmode = f.nmode;
    prog.hbar = f.hbar;
    prog.ops = f.photonic_ops;
    prog.measure_wires = f.measure_wires;
    prog.measure_phis = f.measure_phis;
    const int nstep = nstep_override > 0 ? nstep_override : f.nstep;
    auto uc = tdm::unroll(prog, nstep, f.data);

    nlohmann::json j;
    j["version"] = 1;
    j["paradigm"] = "gaussian";
    j["nmode"] = uc.total_modes;
    j["hbar"] = f.hbar;
    j["detector"] = "homodyne";
    nlohmann::json ops = nlohmann::json::array();
    for (const auto &g : uc.gates) {
        nlohmann::json op;
        op["gate"] = g.name;
        op["wires"] = g.wires;
        op["params"] = g.params;
        ops.push_back(op);
    }
    j["ops"] = ops;
    std::vector<int> wires;
    std::vector<double> phis;
    for (std::size_t s = 0; s < uc.measure_groups.size(); ++s)
        for (std::size_t i = 0; i < uc.measure_groups[s].size(); ++i) {
            wires.push_back(uc.measure_groups[s][i]);
            phis.push_back(uc.measure_phis[s][i]);
        }
    j["measure"]["wires"] = wires;
    j["measure"]["phis"] = phis;
    const std::string text = j.dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else {
        std::ofstream o(out);
        require(o.good(), "unroll: cannot open " + out);
        o << text;
    }
    return 0;
}

int cmd_decompose(const std::string &path, const std::string &out) {
    std::ifstream in(path);
    require(in.good(), "decompose: cannot open " + path);
    nlohmann::json j;
    in >> j;
    require(j.contains("unitary"), "decompose: file needs a 'unitary' matrix");
    const cmat u = io::detail::parse_cmatrix(j["unitary"]);
    auto p = linalg::clements_decompose(u);
    nlohmann::json r;
    r["nmode"] = p.nmode;
    nlohmann::json mzis = nlohmann::json::array();
    for (const auto &t : p.mzi_list)
        mzis.push_back({{"mode", t.mode}, {"theta", t.theta}, {"phi", t.phi}});
    r["mzi_list"] = mzis;
    r["output_phases"] = p.output_phases;
    const double err =
        (linalg::clements_reconstruct(p) - u).cwiseAbs().maxCoeff();
    r["reconstruction_error"] = err;
    const std::string text = r.dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else {
        std::ofstream o(out);
        require(o.good(), "decompose: cannot open " + out);
        o << text;
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"quasar: multi-paradigm quantum circuit simulator"};
    app.require_subcommand(1);

    std::uint64_t default_seed = 0;
    if (const char *env = std::getenv("QUASAR_SEED")) default_seed = std::strtoull(env, nullptr, 10);

    RunOptions opt;
    opt.seed = default_seed;
    std::string file, out, name, kernel = "permanent";
    std::vector<int> sizes{4};
    int batch = 1, repeats = 10, nstep = 0;
    bool do_standardize = false, do_shift = false;

    auto *run = app.add_subcommand("run", "execute a circuit file");
    run->add_option("file", file, "circuit file (JSON)")->required();
    run->add_option("--seed", opt.seed, "master PRNG seed");
    run->add_option("--shots", opt.shots, "override the file's shot count");
    run->add_option("--ranks", opt.ranks, "in-process ranks for distributed execution");
    run->add_option("--threads", opt.threads, "worker threads for batched kernels");
    run->add_option("--chi", opt.chi, "override MPS bond dimension");
    run->add_option("--cutoff", opt.cutoff, "override Fock cutoff");
    run->add_option("--out", opt.out, "result file path (stdout otherwise)");
    run->add_flag("--timings", opt.timings, "include wall-clock timings (breaks byte determinism)");
    run->add_option("--samples-out", opt.samples_out, "TDM per-step samples CSV");
    run->add_option("--wigner-out", opt.wigner_out, "bosonic Wigner grid CSV");
    run->add_option("--wigner-wire", opt.wigner_wire, "wire for the Wigner grid");
    run->add_option("--wigner-halfwidth", opt.wigner_halfwidth, "grid half width");
    run->add_option("--wigner-points", opt.wigner_points, "grid points per axis");

    auto *demo = app.add_subcommand("demo", "run a named demo and check its property");
    std::string demo_list;
    for (const auto &n : demos::demo_names()) demo_list += n + " ";
    demo->add_option("name", name, "one of: " + demo_list)->required();
    demo->add_option("--seed", opt.seed, "master PRNG seed");
    demo->add_option("--out", out, "result file path");

    auto *bench = app.add_subcommand("bench", "time a kernel");
    bench->add_option("--kernel", kernel, "permanent | hafnian | torontonian | grad | mps-step");
    bench->add_option("--sizes", sizes, "matrix sizes / qubit counts");
    bench->add_option("--batch", batch, "batch size for matrix kernels");
    bench->add_option("--repeats", repeats, "timed repetitions after one warm-up");
    bench->add_option("--seed", opt.seed, "master PRNG seed");
    bench->add_option("--threads", opt.threads, "worker threads for batched kernels");
    bench->add_option("--out", out, "CSV path (stdout otherwise)");

    auto *transpile = app.add_subcommand("transpile", "qubit circuit file -> MBQC pattern text");
    transpile->add_option("file", file, "qubit circuit file")->required();
    transpile->add_option("--out", out, "pattern text path (stdout otherwise)");
    transpile->add_flag("--standardize", do_standardize, "reorder to N* E* M* form");
    transpile->add_flag("--shift-signals", do_shift, "also remove t-domain dependencies");

    auto *unroll = app.add_subcommand("unroll", "tdm circuit file -> spatial gaussian circuit");
    unroll->add_option("file", file, "tdm circuit file")->required();
    unroll->add_option("--nstep", nstep, "steps to unroll (file's nstep otherwise)");
    unroll->add_option("--out", out, "output circuit file (stdout otherwise)");

    auto *decompose = app.add_subcommand("decompose", "unitary -> rectangular-mesh parameters");
    decompose->add_option("file", file, "JSON file with a 'unitary' entry")->required();
    decompose->add_option("--out", out, "output JSON path (stdout otherwise)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(file, opt);
        if (demo->parsed()) return cmd_demo(name, opt.seed, out);
        if (bench->parsed())
            return cmd_bench(kernel, sizes, batch, repeats, opt.seed, opt.threads, out);
        if (transpile->parsed()) return cmd_transpile(file, out, do_standardize, do_shift);
        if (unroll->parsed()) return cmd_unroll(file, nstep, out);
        if (decompose->parsed()) return cmd_decompose(file, out);
    } catch (const invalid_input &e) {
        std::cerr << "error (schema): " << e.what() << '\n';
        return 2;
    } catch (const guard_error &e) {
        std::cerr << "error (numerical guard): " << e.what() << '\n';
        return 3;
    } catch (const transport_error &e) {
        std::cerr << "error (transport): " << e.what() << '\n';
        return 4;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
