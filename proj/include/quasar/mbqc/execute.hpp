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

#include <map>
#include <optional>

#include "quasar/mbqc/pattern.hpp"
#include "quasar/rng.hpp"

namespace quasar::mbqc {

/// Output of a pattern run: the normalized state over the unmeasured nodes
/// (in `node_order`), the per-node outcome record, and the Born probability
/// of the realized branch.
struct GraphStateResult {
    std::vector<int> node_order;
    cvec full_state;
    std::map<int, int> outcomes;
    double branch_probability = 1.0;
};

namespace detail {

inline cmat plane_operator(Plane plane, double angle) {
    cmat x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << cdouble(0, 0), cdouble(0, -1), cdouble(0, 1), cdouble(0, 0);
    z << 1, 0, 0, -1;
    switch (plane) {
        case Plane::XY: return std::cos(angle) * x + std::sin(angle) * y;
        case Plane::YZ: return std::cos(angle) * y + std::sin(angle) * z;
        default: return std::cos(angle) * z + std::sin(angle) * x;
    }
}

/// Measurement operator adjusted by the signals: s X-conjugations and t
/// Z-conjugations (for XY this is the textbook (-1)^s angle + t pi rule).
inline cmat adjusted_operator(Plane plane, double angle, int s_sig, int t_sig) {
    cmat op = plane_operator(plane, angle);
    if (s_sig) {
        cmat x(2, 2);
        x << 0, 1, 1, 0;
        op = x * op * x;
    }
    if (t_sig) {
        cmat z(2, 2);
        z << 1, 0, 0, -1;
        op = z * op * z;
    }
    return op;
}

/// Live register of alive nodes; node list order is ket order (first alive
/// node is the most significant bit).
struct Register {
    std::vector<int> order;
    cvec psi;

    int bit_of(int node) const {
        for (std::size_t i = 0; i < order.size(); ++i)
            if (order[i] == node) return static_cast<int>(order.size() - 1 - i);
        throw invalid_input("mbqc: node not alive: " + std::to_string(node));
    }

    void append_plus(int node) {
        const long dim = psi.size();
        cvec next(dim * 2);
        const double r = 1.0 / std::sqrt(2.0);
        for (long i = 0; i < dim; ++i) {
            next(2 * i) = psi(i) * r;
            next(2 * i + 1) = psi(i) * r;
        }
        psi = std::move(next);
        order.push_back(node);
    }

    void apply_1q(int node, const cmat &m) {
        const int b = bit_of(node);
        const long dim = psi.size();
        const long mask = 1l << b;
        for (long i = 0; i < dim; ++i) {
            if (i & mask) continue;
            const cdouble a0 = psi(i), a1 = psi(i | mask);
            psi(i) = m(0, 0) * a0 + m(0, 1) * a1;
            psi(i | mask) = m(1, 0) * a0 + m(1, 1) * a1;
        }
    }

    void apply_cz(int a, int b) {
        const long ma = 1l << bit_of(a), mb = 1l << bit_of(b);
        for (long i = 0; i < psi.size(); ++i)
            if ((i & ma) && (i & mb)) psi(i) = -psi(i);
    }

    /// Projects node onto the +-1 eigenvector of op (outcome 0) or the -1
    /// one (outcome 1); returns the branch probability and removes the node.
    double project_out(int node, const cmat &op, int outcome) {
        Eigen::SelfAdjointEigenSolver<cmat> es(op);
        // eigenvalues ascending: column 1 is +1, column 0 is -1
        cvec vec = es.eigenvectors().col(outcome == 0 ? 1 : 0);
        const int b = bit_of(node);
        const long mask = 1l << b;
        const long dim = psi.size();
        cvec reduced(dim / 2);
        long j = 0;
        for (long i = 0; i < dim; ++i) {
            if (i & mask) continue;
            reduced(j++) = std::conj(vec(0)) * psi(i) + std::conj(vec(1)) * psi(i | mask);
        }
        const double prob = reduced.squaredNorm();
        if (prob > 0) reduced /= std::sqrt(prob);
        psi = std::move(reduced);
        order.erase(std::find(order.begin(), order.end(), node));
        return prob;
    }
};

inline int signal(const std::map<int, int> &outcomes, const Domain &d) {
    int s = 0;
    for (int n : d) {
        auto it = outcomes.find(n);
        require(it != outcomes.end(), "mbqc: signal references unmeasured node");
        s ^= it->second;
    }
    return s;
}

} // namespace detail

/// Runs a pattern: N prepares |+>, E entangles with CZ, M measures in the
/// signal-adjusted plane/angle, X/Z apply conditional byproducts. Outcomes
/// come from the Born rule under `rng`, or from `forced` when given (the
/// test hook for branch-by-branch comparisons). The final state is reported
/// over the pattern's outputs, most significant first.
inline GraphStateResult execute(const Pattern &p, const cvec &input, Rng *rng,
                                const std::map<int, int> *forced = nullptr) {
    require((1l << p.inputs().size()) == input.size(),
            "mbqc execute: input length must be 2^|inputs|");
    require(std::abs(input.squaredNorm() - 1.0) < 1e-9, "mbqc execute: input not normalized");
    require(rng != nullptr || forced != nullptr, "mbqc execute: need rng or forced outcomes");

    detail::Register reg;
    reg.order = p.inputs();
    reg.psi = input;

    GraphStateResult result;
    for (const auto &c : p.commands()) {
        switch (c.kind) {
            case Command::N:
                reg.append_plus(c.node);
                break;
            case Command::E:
                reg.apply_cz(c.node, c.node2);
                break;
            case Command::M: {
                const int s_sig = detail::signal(result.outcomes, c.s_domain);
                const int t_sig = detail::signal(result.outcomes, c.t_domain);
                const cmat op = detail::adjusted_operator(c.plane, c.angle, s_sig, t_sig);
                int outcome;
                if (forced) {
                    auto it = forced->find(c.node);
                    require(it != forced->end(), "mbqc execute: missing forced outcome");
                    outcome = it->second;
                } else {
                    // draw from the Born rule: probability of outcome 0
                    Eigen::SelfAdjointEigenSolver<cmat> es(op);
                    cvec plus = es.eigenvectors().col(1);
                    detail::Register probe = reg;
                    cmat proj = plus * plus.adjoint();
                    probe.apply_1q(c.node, proj);
                    const double p0 = probe.psi.squaredNorm();
                    outcome = (rng->uniform() < p0) ? 0 : 1;
                }
                const double prob = reg.project_out(c.node, op, outcome);
                if (!forced && prob <= 1e-300)
                    throw guard_error("mbqc execute: zero-probability branch");
                result.outcomes[c.node] = outcome;
                result.branch_probability *= prob;
                break;
            }
            case Command::X:
                if (detail::signal(result.outcomes, c.s_domain)) {
                    cmat x(2, 2);
                    x << 0, 1, 1, 0;
                    reg.apply_1q(c.node, x);
                }
                break;
            case Command::Z:
                if (detail::signal(result.outcomes, c.s_domain)) {
                    cmat z(2, 2);
                    z << 1, 0, 0, -1;
                    reg.apply_1q(c.node, z);
                }
                break;
        }
    }

    // reorder the surviving register to the pattern's output order
    const std::vector<int> outs = p.outputs();
    require(outs.size() == reg.order.size(), "mbqc execute: output bookkeeping mismatch");
    const int k = static_cast<int>(outs.size());
    result.node_order = outs;
    result.full_state = cvec::Zero(reg.psi.size());
    for (long i = 0; i < reg.psi.size(); ++i) {
        long target = 0;
        for (int q = 0; q < k; ++q) {
            const int bit = (i >> reg.bit_of(outs[q])) & 1l;
            target |= static_cast<long>(bit) << (k - 1 - q);
        }
        result.full_state(target) = reg.psi(i);
    }
    const double norm = result.full_state.norm();
    if (norm > 0) result.full_state /= norm;
    return result;
}

inline GraphStateResult execute(const Pattern &p, Rng &rng) {
    cvec input = cvec::Zero(1l << p.inputs().size());
    input(0) = 1.0;
    return execute(p, input, &rng);
}

/// All measured nodes of a pattern, in measurement order.
inline std::vector<int> measured_nodes(const Pattern &p) {
    std::vector<int> out;
    for (const auto &c : p.commands())
        if (c.kind == Command::M) out.push_back(c.node);
    return out;
}

} // namespace quasar::mbqc
