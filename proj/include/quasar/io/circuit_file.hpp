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

#include <fstream>
#include <set>

#include <json.hpp>

#include "quasar/photonic/gates.hpp"
#include "quasar/qubit/circuit.hpp"

namespace quasar::io {

using nlohmann::json;

/// Self-describing circuit file shared by every paradigm. Unknown fields
/// are rejected up front so that a typo fails loudly instead of silently
/// changing the job.
struct CircuitFile {
    int version = 1;
    std::string paradigm; // qubit | fock | gaussian | bosonic | tdm | mbqc-pattern
    int nqubit = 0;
    int nmode = 0;
    int cutoff = 8;
    int chi = 64;
    int nstep = 1;
    int shots = 0;
    double hbar = 2.0;
    std::string backend;  // fock: basis | tensor; qubit: dense | mps
    std::string detector; // pnrd | threshold | homodyne
    std::vector<int> init_occupation;
    std::vector<qubit::Gate> qubit_ops;
    std::vector<photonic::PhotonicGate> photonic_ops;
    std::vector<qubit::Observable> observables;
    std::vector<std::vector<double>> data;
    std::vector<int> measure_wires;
    std::vector<double> measure_phis;
    std::vector<std::string> pattern_lines;
    std::vector<int> pattern_inputs;
    std::vector<double> squeezing;
    cmat unitary;   // GBS interferometer (optional)
    rmat adjacency; // GBS graph (optional)
    double mean_photon = 0.0;
    std::map<int, int> select; // fock tensor post-selection: mode -> photons
};

namespace detail {

inline void check_keys(const json &obj, const std::set<std::string> &allowed,
                       const std::string &where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw invalid_input("circuit file: unknown field '" + it.key() + "' in " + where);
}

inline cdouble parse_scalar(const json &v) {
    if (v.is_number()) return cdouble(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2) return cdouble(v[0].get<double>(), v[1].get<double>());
    throw invalid_input("circuit file: matrix entries are numbers or [re, im] pairs");
}

inline cmat parse_cmatrix(const json &rows) {
    require(rows.is_array() && !rows.empty(), "circuit file: matrix must be a nonempty array");
    const int r = static_cast<int>(rows.size());
    const int c = static_cast<int>(rows[0].size());
    cmat m(r, c);
    for (int i = 0; i < r; ++i) {
        require(static_cast<int>(rows[i].size()) == c, "circuit file: ragged matrix");
        for (int j = 0; j < c; ++j) m(i, j) = parse_scalar(rows[i][j]);
    }
    return m;
}

inline qubit::Gate parse_qubit_gate(const json &op) {
    check_keys(op, {"gate", "wires", "controls", "params", "encode", "trainable"}, "qubit op");
    std::string name = op.at("gate").get<std::string>();
    std::vector<int> wires = op.at("wires").get<std::vector<int>>();
    std::vector<int> controls =
        op.contains("controls") ? op["controls"].get<std::vector<int>>() : std::vector<int>{};
    std::vector<double> params =
        op.contains("params") ? op["params"].get<std::vector<double>>() : std::vector<double>{};
    const bool encode = op.contains("encode") && op["encode"].get<bool>();
    const bool trainable = op.contains("trainable") && op["trainable"].get<bool>();
    // sugar spellings with the control as the first wire
    if (name == "cnot" || name == "cx") {
        require(wires.size() == 2, "cnot: wires [control, target]");
        return qubit::make_gate("x", {wires[1]}, {wires[0]});
    }
    if (name == "cz" || name == "cp" || name == "cry") {
        require(wires.size() == 2, name + ": wires [control, target]");
        const std::string base = (name == "cz") ? "z" : (name == "cp") ? "p" : "ry";
        return qubit::make_gate(base, {wires[1]}, {wires[0]}, params, trainable, encode);
    }
    return qubit::make_gate(name, wires, controls, params, trainable, encode);
}

inline photonic::PhotonicGate parse_photonic_gate(const json &op) {
    check_keys(op, {"gate", "wires", "params", "encode", "ntau"}, "photonic op");
    photonic::PhotonicGate g;
    g.name = op.at("gate").get<std::string>();
    g.wires = op.at("wires").get<std::vector<int>>();
    if (op.contains("params")) g.params = op["params"].get<std::vector<double>>();
    if (op.contains("encode")) g.encode = op["encode"].get<bool>();
    if (op.contains("ntau")) g.ntau = op["ntau"].get<int>();
    if (g.name == "delay") {
        require(g.ntau >= 1, "delay: ntau >= 1 required");
        require(g.params.size() == 2, "delay: params [theta, phi]");
    }
    return g;
}

} // namespace detail

inline CircuitFile parse_circuit_file(const json &j) {
    static const std::set<std::string> top{
        "version",  "paradigm",  "nqubit",     "nmode",      "cutoff",      "chi",
        "nstep",    "shots",     "hbar",       "backend",    "detector",    "init_state",
        "ops",      "observables", "data",     "measure",    "pattern",     "inputs",
        "squeezing", "unitary",  "adjacency",  "mean_photon", "select"};
    detail::check_keys(j, top, "top level");

    CircuitFile f;
    f.version = j.value("version", 1);
    require(f.version == 1, "circuit file: unsupported version");
    require(j.contains("paradigm"), "circuit file: missing paradigm");
    f.paradigm = j["paradigm"].get<std::string>();
    static const std::set<std::string> paradigms{"qubit", "fock", "gaussian",
                                                 "bosonic", "tdm", "mbqc-pattern"};
    require(paradigms.count(f.paradigm), "circuit file: unknown paradigm " + f.paradigm);

    f.nqubit = j.value("nqubit", 0);
    f.nmode = j.value("nmode", 0);
    f.cutoff = j.value("cutoff", 8);
    f.chi = j.value("chi", 64);
    f.nstep = j.value("nstep", 1);
    f.shots = j.value("shots", 0);
    f.hbar = j.value("hbar", 2.0);
    f.backend = j.value("backend", "");
    f.detector = j.value("detector", "");
    f.mean_photon = j.value("mean_photon", 0.0);

    if (j.contains("init_state")) {
        if (j["init_state"].is_string())
            require(j["init_state"] == "vac", "circuit file: init_state is 'vac' or occupations");
        else
            f.init_occupation = j["init_state"].get<std::vector<int>>();
    }
    if (j.contains("ops")) {
        for (const auto &op : j["ops"]) {
            if (f.paradigm == "qubit")
                f.qubit_ops.push_back(detail::parse_qubit_gate(op));
            else
                f.photonic_ops.push_back(detail::parse_photonic_gate(op));
        }
    }
    if (j.contains("observables")) {
        for (const auto &o : j["observables"]) {
            detail::check_keys(o, {"wires", "basis"}, "observable");
            f.observables.push_back(
                {o.at("wires").get<std::vector<int>>(), o.at("basis").get<std::string>()});
        }
    }
    if (j.contains("data")) f.data = j["data"].get<std::vector<std::vector<double>>>();
    if (j.contains("measure")) {
        detail::check_keys(j["measure"], {"wires", "phis"}, "measure");
        f.measure_wires = j["measure"].at("wires").get<std::vector<int>>();
        f.measure_phis = j["measure"].value("phis", std::vector<double>(f.measure_wires.size(), 0.0));
        require(f.measure_wires.size() == f.measure_phis.size(),
                "circuit file: measure wires/phis mismatch");
    }
    if (j.contains("pattern")) f.pattern_lines = j["pattern"].get<std::vector<std::string>>();
    if (j.contains("inputs")) f.pattern_inputs = j["inputs"].get<std::vector<int>>();
    if (j.contains("squeezing")) f.squeezing = j["squeezing"].get<std::vector<double>>();
    if (j.contains("unitary")) f.unitary = detail::parse_cmatrix(j["unitary"]);
    if (j.contains("adjacency")) {
        cmat a = detail::parse_cmatrix(j["adjacency"]);
        require(a.imag().cwiseAbs().maxCoeff() == 0.0, "circuit file: adjacency must be real");
        f.adjacency = a.real();
    }
    if (j.contains("select"))
        for (auto it = j["select"].begin(); it != j["select"].end(); ++it)
            f.select[std::stoi(it.key())] = it.value().get<int>();

    // paradigm-specific sanity
    if (f.paradigm == "qubit") require(f.nqubit >= 1, "circuit file: qubit paradigm needs nqubit");
    else if (f.paradigm != "mbqc-pattern")
        require(f.nmode >= 1 || f.adjacency.rows() > 0,
                "circuit file: photonic paradigms need nmode (or an adjacency)");
    return f;
}

inline CircuitFile load_circuit_file(const std::string &path) {
    std::ifstream in(path);
    require(in.good(), "circuit file: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        throw invalid_input(std::string("circuit file: JSON parse error: ") + e.what());
    }
    return parse_circuit_file(j);
}

} // namespace quasar::io
