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

#include <algorithm>
#include <set>

#include "quasar/core.hpp"

namespace quasar::mbqc {

enum class Plane { XY, YZ, ZX };

inline std::string plane_name(Plane p) {
    switch (p) {
        case Plane::XY: return "XY";
        case Plane::YZ: return "YZ";
        default: return "ZX";
    }
}

inline Plane plane_from(const std::string &s) {
    if (s == "XY") return Plane::XY;
    if (s == "YZ") return Plane::YZ;
    if (s == "ZX") return Plane::ZX;
    throw invalid_input("unknown measurement plane: " + s);
}

/// Signal domain: the signal is the XOR of the listed nodes' outcomes, so
/// merging two domains is the symmetric difference.
using Domain = std::set<int>;

inline void xor_into(Domain &into, const Domain &other) {
    for (int n : other) {
        auto it = into.find(n);
        if (it == into.end())
            into.insert(n);
        else
            into.erase(it);
    }
}

/// One measurement-calculus command.
struct Command {
    enum Kind { N, E, M, X, Z } kind = N;
    int node = 0;
    int node2 = 0; // E only
    Plane plane = Plane::XY;
    double angle = 0.0;
    Domain s_domain;
    Domain t_domain;

    static Command n(int node) {
        Command c;
        c.kind = N;
        c.node = node;
        return c;
    }
    static Command e(int a, int b) {
        Command c;
        c.kind = E;
        c.node = a;
        c.node2 = b;
        return c;
    }
    static Command m(int node, double angle, Plane plane = Plane::XY, Domain s = {},
                     Domain t = {}) {
        Command c;
        c.kind = M;
        c.node = node;
        c.angle = angle;
        c.plane = plane;
        c.s_domain = std::move(s);
        c.t_domain = std::move(t);
        return c;
    }
    static Command x(int node, Domain d) {
        Command c;
        c.kind = X;
        c.node = node;
        c.s_domain = std::move(d);
        return c;
    }
    static Command z(int node, Domain d) {
        Command c;
        c.kind = Z;
        c.node = node;
        c.s_domain = std::move(d);
        return c;
    }
};

/// Command list over a graph state: input nodes carry the input state,
/// output nodes are whatever stays unmeasured. Validation is immediate on
/// append.
class Pattern {
  public:
    Pattern() = default;
    explicit Pattern(std::vector<int> input_nodes) : inputs_(std::move(input_nodes)) {
        for (int n : inputs_) {
            require(!known_.count(n), "pattern: duplicate input node");
            known_.insert(n);
        }
    }

    const std::vector<int> &inputs() const { return inputs_; }
    const std::vector<Command> &commands() const { return commands_; }
    const std::set<int> &nodes() const { return known_; }
    const std::set<int> &measured() const { return measured_; }

    /// Output nodes: explicitly recorded order (transpiler) or ascending.
    std::vector<int> outputs() const {
        if (!explicit_outputs_.empty()) return explicit_outputs_;
        std::vector<int> out;
        for (int n : known_)
            if (!measured_.count(n)) out.push_back(n);
        return out;
    }

    void set_outputs(std::vector<int> outs) { explicit_outputs_ = std::move(outs); }

    void append(Command c) {
        switch (c.kind) {
            case Command::N:
                require(!known_.count(c.node), "pattern: node already exists");
                known_.insert(c.node);
                break;
            case Command::E:
                require(known_.count(c.node) && known_.count(c.node2),
                        "pattern: dangling edge endpoint");
                require(!measured_.count(c.node) && !measured_.count(c.node2),
                        "pattern: entangling a measured node");
                require(c.node != c.node2, "pattern: self edge");
                break;
            case Command::M:
                require(known_.count(c.node), "pattern: measuring unknown node");
                require(!measured_.count(c.node), "pattern: node measured twice");
                check_domain(c.s_domain);
                check_domain(c.t_domain);
                measured_.insert(c.node);
                break;
            case Command::X:
            case Command::Z:
                require(known_.count(c.node), "pattern: correcting unknown node");
                require(!measured_.count(c.node), "pattern: correcting a measured node");
                check_domain(c.s_domain);
                break;
        }
        commands_.push_back(std::move(c));
    }

    // builder sugar mirroring the command constructors
    void n(int node) { append(Command::n(node)); }
    void e(int a, int b) { append(Command::e(a, b)); }
    void m(int node, double angle, Plane plane = Plane::XY, Domain s = {}, Domain t = {}) {
        append(Command::m(node, angle, plane, std::move(s), std::move(t)));
    }
    void x(int node, Domain d) { append(Command::x(node, std::move(d))); }
    void z(int node, Domain d) { append(Command::z(node, std::move(d))); }

    /// True when command kinds run N* E* M* (X|Z)*.
    bool is_standard() const {
        int stage = 0; // 0 N, 1 E, 2 M, 3 corrections
        for (const auto &c : commands_) {
            int s;
            switch (c.kind) {
                case Command::N: s = 0; break;
                case Command::E: s = 1; break;
                case Command::M: s = 2; break;
                default: s = 3; break;
            }
            if (s < stage) return false;
            stage = s;
        }
        return true;
    }

    /// Rebuilds a pattern from raw parts (used by the rewriting passes).
    static Pattern from_commands(std::vector<int> inputs, const std::vector<Command> &cmds,
                                 std::vector<int> outputs = {}) {
        Pattern p(std::move(inputs));
        for (const auto &c : cmds) p.append(c);
        if (!outputs.empty()) p.set_outputs(std::move(outputs));
        return p;
    }

  private:
    void check_domain(const Domain &d) const {
        for (int n : d)
            require(measured_.count(n), "pattern: domain references unmeasured node " +
                                            std::to_string(n));
    }

    std::vector<int> inputs_;
    std::vector<int> explicit_outputs_;
    std::vector<Command> commands_;
    std::set<int> known_;
    std::set<int> measured_;
};

/// Reorders commands to N* E* M* with X/Z only on outputs, folding byproduct
/// corrections into measurement domains with the plane-specific conjugation
/// rules. Semantics are preserved branch by branch.
inline Pattern standardize(const Pattern &p) {
    std::vector<Command> ns, es, ms;
    std::map<int, Domain> pending_x, pending_z;

    for (const auto &c : p.commands()) {
        switch (c.kind) {
            case Command::N:
                ns.push_back(c);
                break;
            case Command::E: {
                // E_ij X_i^s = X_i^s Z_j^s E_ij, E commutes with Z
                auto xi = pending_x.find(c.node);
                if (xi != pending_x.end() && !xi->second.empty())
                    xor_into(pending_z[c.node2], xi->second);
                auto xj = pending_x.find(c.node2);
                if (xj != pending_x.end() && !xj->second.empty())
                    xor_into(pending_z[c.node], xj->second);
                es.push_back(c);
                break;
            }
            case Command::M: {
                // The s-domain counts X conjugations of the measurement
                // operator, the t-domain Z conjugations (uniform across
                // planes; for XY this is the usual (-1)^s alpha + t pi).
                Command m = c;
                if (pending_x.count(c.node)) xor_into(m.s_domain, pending_x[c.node]);
                if (pending_z.count(c.node)) xor_into(m.t_domain, pending_z[c.node]);
                pending_x.erase(c.node);
                pending_z.erase(c.node);
                ms.push_back(std::move(m));
                break;
            }
            case Command::X:
                xor_into(pending_x[c.node], c.s_domain);
                break;
            case Command::Z:
                xor_into(pending_z[c.node], c.s_domain);
                break;
        }
    }

    std::vector<Command> cmds;
    cmds.reserve(ns.size() + es.size() + ms.size() + pending_x.size() + pending_z.size());
    for (auto &c : ns) cmds.push_back(std::move(c));
    for (auto &c : es) cmds.push_back(std::move(c));
    for (auto &c : ms) cmds.push_back(std::move(c));
    for (auto &[node, d] : pending_z)
        if (!d.empty()) cmds.push_back(Command::z(node, d));
    for (auto &[node, d] : pending_x)
        if (!d.empty()) cmds.push_back(Command::x(node, d));
    return Pattern::from_commands(p.inputs(), cmds, p.outputs());
}

/// Removes t-domain dependencies from XY measurements: measuring at angle
/// alpha + pi relabels the outcome, so the t-signal is folded into every
/// later use of this node's outcome instead.
inline Pattern shift_signals(const Pattern &p) {
    std::vector<Command> cmds = p.commands();
    for (std::size_t i = 0; i < cmds.size(); ++i) {
        if (cmds[i].kind != Command::M || cmds[i].plane != Plane::XY) continue;
        Domain t = cmds[i].t_domain;
        if (t.empty()) continue;
        cmds[i].t_domain.clear();
        const int node = cmds[i].node;
        for (std::size_t j = i + 1; j < cmds.size(); ++j) {
            if (cmds[j].s_domain.count(node)) xor_into(cmds[j].s_domain, t);
            if (cmds[j].kind == Command::M && cmds[j].t_domain.count(node))
                xor_into(cmds[j].t_domain, t);
        }
    }
    return Pattern::from_commands(p.inputs(), cmds, p.outputs());
}

} // namespace quasar::mbqc
