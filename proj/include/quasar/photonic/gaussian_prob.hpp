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

#include "quasar/linalg/hafnian.hpp"
#include "quasar/linalg/torontonian.hpp"
#include "quasar/photonic/fock_basis.hpp"
#include "quasar/photonic/gaussian.hpp"

namespace quasar::photonic {

/// Covariance in the complex (a, a^+) ordering: Sigma = T V T^+ with
/// T = [[I, iI], [I, -iI]] / sqrt(2 hbar); vacuum gives I/2.
inline cmat complex_covariance(const GaussianState &state) {
    const int m = state.nmode();
    cmat t(2 * m, 2 * m);
    const double norm = 1.0 / std::sqrt(2.0 * state.hbar());
    t.topLeftCorner(m, m) = norm * cmat::Identity(m, m);
    t.topRightCorner(m, m) = cdouble(0, norm) * cmat::Identity(m, m);
    t.bottomLeftCorner(m, m) = norm * cmat::Identity(m, m);
    t.bottomRightCorner(m, m) = cdouble(0, -norm) * cmat::Identity(m, m);
    return t * state.cov().cast<cdouble>() * t.adjoint();
}

inline cmat husimi_q(const GaussianState &state) {
    const int m = state.nmode();
    return complex_covariance(state) + 0.5 * cmat::Identity(2 * m, 2 * m);
}

/// O = I - Q^{-1}; the kernel of both detector probability laws.
inline cmat o_matrix(const GaussianState &state) {
    const int m = state.nmode();
    const cmat q = husimi_q(state);
    return cmat::Identity(2 * m, 2 * m) - q.inverse();
}

inline void require_zero_displacement(const GaussianState &state) {
    if (state.mean().cwiseAbs().maxCoeff() > 1e-9)
        throw invalid_input(
            "displaced-state photon statistics are unsupported (loop hafnian out of scope); "
            "use the Fock tensor backend instead");
}

/// PNRD probability of one occupation pattern via the hafnian law:
/// P(n) = Haf(A_n) / (sqrt(det Q) prod n_i!), A = X (I - Q^{-1}) with mode
/// blocks repeated per pattern. Zero displacement only.
inline double prob_pnrd(const GaussianState &state, const Occupation &pattern) {
    const int m = state.nmode();
    require(static_cast<int>(pattern.size()) == m, "prob_pnrd: pattern length mismatch");
    require_zero_displacement(state);
    const cmat q = husimi_q(state);
    const cmat o = cmat::Identity(2 * m, 2 * m) - q.inverse();
    // A = X O swaps the two halves of O's rows
    cmat a(2 * m, 2 * m);
    a.topRows(m) = o.bottomRows(m);
    a.bottomRows(m) = o.topRows(m);

    std::vector<int> idx;
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < pattern[i]; ++k) idx.push_back(i);
    const int n = static_cast<int>(idx.size());
    cmat sub(2 * n, 2 * n);
    for (int r = 0; r < 2 * n; ++r) {
        const int gr = (r < n) ? idx[r] : idx[r - n] + m;
        for (int c = 0; c < 2 * n; ++c) {
            const int gc = (c < n) ? idx[c] : idx[c - n] + m;
            sub(r, c) = a(gr, gc);
        }
    }
    const cdouble det_q = Eigen::PartialPivLU<cmat>(q).determinant();
    double denom = std::sqrt(std::abs(det_q));
    for (int i = 0; i < m; ++i) denom *= factorial(pattern[i]);
    const cdouble haf = linalg::hafnian(sub, 1e-8);
    return std::max(0.0, haf.real() / denom);
}

/// Threshold-detector probability of a click pattern:
/// P = Tor(O_S) / sqrt(det Q) with O restricted to the clicked modes.
inline double prob_threshold(const GaussianState &state, const std::vector<int> &clicks) {
    const int m = state.nmode();
    require(static_cast<int>(clicks.size()) == m, "prob_threshold: pattern length mismatch");
    require_zero_displacement(state);
    const cmat q = husimi_q(state);
    const cmat o = cmat::Identity(2 * m, 2 * m) - q.inverse();
    std::vector<int> on;
    for (int i = 0; i < m; ++i) {
        require(clicks[i] == 0 || clicks[i] == 1, "prob_threshold: clicks are 0/1");
        if (clicks[i]) on.push_back(i);
    }
    const int k = static_cast<int>(on.size());
    cmat sub(2 * k, 2 * k);
    for (int r = 0; r < 2 * k; ++r) {
        const int gr = (r < k) ? on[r] : on[r - k] + m;
        for (int c = 0; c < 2 * k; ++c) {
            const int gc = (c < k) ? on[c] : on[c - k] + m;
            sub(r, c) = o(gr, gc);
        }
    }
    const cdouble det_q = Eigen::PartialPivLU<cmat>(q).determinant();
    const cdouble tor = linalg::torontonian(sub);
    return std::max(0.0, tor.real() / std::sqrt(std::abs(det_q)));
}

namespace detail {

/// Joint probability of a pattern prefix = detector probability on the
/// reduced (marginal) state of the first modes.
inline double prefix_prob(const GaussianState &state, const std::vector<int> &prefix,
                          bool threshold, std::map<std::vector<int>, double> &memo) {
    if (prefix.empty()) return 1.0;
    auto it = memo.find(prefix);
    if (it != memo.end()) return it->second;
    std::vector<int> modes(prefix.size());
    for (std::size_t i = 0; i < prefix.size(); ++i) modes[i] = static_cast<int>(i);
    const GaussianState red = state.reduced(modes);
    const double p = threshold ? prob_threshold(red, prefix) : prob_pnrd(red, prefix);
    memo[prefix] = p;
    return p;
}

} // namespace detail

struct SampleStats {
    std::map<Occupation, std::uint64_t> counts;
    double leaked_mass = 0.0; // PNRD mass beyond the per-mode cutoff, worst mode step
};

/// Exact chain-rule sampler: mode k's outcome is drawn from
/// P(n_k | n_<k) computed from marginal-state probabilities. PNRD outcomes
/// are capped by `cutoff` per mode; if the conditional tail mass beyond the
/// cutoff is non-negligible it is reported in leaked_mass.
inline SampleStats sample_detector(const GaussianState &state, const std::string &detector,
                                   int shots, Rng &rng, int cutoff = 8) {
    require(detector == "pnrd" || detector == "threshold", "sample: unknown detector");
    require(shots >= 1, "sample: shots >= 1");
    require_zero_displacement(state);
    const bool threshold = detector == "threshold";
    const int m = state.nmode();
    const int top = threshold ? 1 : cutoff;
    std::map<std::vector<int>, double> memo;
    SampleStats out;
    for (int s = 0; s < shots; ++s) {
        std::vector<int> prefix;
        for (int k = 0; k < m; ++k) {
            const double p_prev = detail::prefix_prob(state, prefix, threshold, memo);
            std::vector<double> weights(top + 1, 0.0);
            double mass = 0.0;
            for (int v = 0; v <= top; ++v) {
                prefix.push_back(v);
                const double pj = detail::prefix_prob(state, prefix, threshold, memo);
                prefix.pop_back();
                weights[v] = std::max(0.0, pj);
                mass += weights[v];
            }
            if (p_prev > 1e-300) {
                const double leak = std::max(0.0, 1.0 - mass / p_prev);
                out.leaked_mass = std::max(out.leaked_mass, leak);
            }
            prefix.push_back(static_cast<int>(rng.discrete(weights)));
        }
        out.counts[prefix] += 1;
    }
    return out;
}

} // namespace quasar::photonic
