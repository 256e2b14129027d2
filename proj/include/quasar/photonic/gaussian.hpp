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

#include "quasar/photonic/gates.hpp"
#include "quasar/rng.hpp"

namespace quasar::photonic {

/// Phase-space action of a Gaussian unitary: xi -> S xi + shift, xxpp order.
struct SymplecticOp {
    rmat s;
    rvec shift;
};

inline rmat symplectic_form(int m) {
    rmat omega = rmat::Zero(2 * m, 2 * m);
    omega.topRightCorner(m, m) = rmat::Identity(m, m);
    omega.bottomLeftCorner(m, m) = -rmat::Identity(m, m);
    return omega;
}

inline bool is_symplectic(const rmat &s, double tol = 1e-8) {
    const int m = static_cast<int>(s.rows()) / 2;
    return ((s * symplectic_form(m) * s.transpose()) - symplectic_form(m)).cwiseAbs().maxCoeff() <
           tol;
}

/// Gaussian state in covariance form: V (2m x 2m, xxpp), mean d, and the
/// hbar convention (default 2, so the vacuum has V = I).
class GaussianState {
  public:
    GaussianState() = default;

    static GaussianState vacuum(int nmode, double hbar = 2.0) {
        GaussianState s;
        s.nmode_ = nmode;
        s.hbar_ = hbar;
        s.v_ = 0.5 * hbar * rmat::Identity(2 * nmode, 2 * nmode);
        s.d_ = rvec::Zero(2 * nmode);
        return s;
    }

    int nmode() const { return nmode_; }
    double hbar() const { return hbar_; }
    const rmat &cov() const { return v_; }
    rmat &cov() { return v_; }
    const rvec &mean() const { return d_; }
    rvec &mean() { return d_; }

    /// Smallest eigenvalue of V + i hbar Omega / 2; physical states are
    /// nonnegative up to roundoff.
    double uncertainty_floor() const {
        cmat m = v_.cast<cdouble>() +
                 cdouble(0, 0.5 * hbar_) * symplectic_form(nmode_).cast<cdouble>();
        Eigen::SelfAdjointEigenSolver<cmat> es(m);
        return es.eigenvalues().minCoeff();
    }

    /// Marginal state on a mode subset.
    GaussianState reduced(const std::vector<int> &modes) const {
        const int k = static_cast<int>(modes.size());
        GaussianState out;
        out.nmode_ = k;
        out.hbar_ = hbar_;
        out.v_.resize(2 * k, 2 * k);
        out.d_.resize(2 * k);
        auto full = [&](int i) { return (i < k) ? modes[i] : modes[i - k] + nmode_; };
        for (int i = 0; i < 2 * k; ++i) {
            out.d_(i) = d_(full(i));
            for (int j = 0; j < 2 * k; ++j) out.v_(i, j) = v_(full(i), full(j));
        }
        return out;
    }

  private:
    int nmode_ = 0;
    double hbar_ = 2.0;
    rmat v_;
    rvec d_;
};

/// Phase-space action of one gate embedded into 2m x 2m. Mode unitaries act
/// in the conjugated convention (a -> conj(U) a), so the embedded block is
/// S = [[Re U, Im U], [-Im U, Re U]].
inline SymplecticOp symplectic_of(const PhotonicGate &g, int m, double hbar = 2.0) {
    SymplecticOp op;
    op.s = rmat::Identity(2 * m, 2 * m);
    op.shift = rvec::Zero(2 * m);
    for (int w : g.wires) require(w >= 0 && w < m, "symplectic_of: wire out of range");

    if (g.name == "s") {
        require(g.wires.size() == 1 && !g.params.empty(), "s: one wire, params [r] or [r, theta]");
        const double r = g.params[0];
        const double theta = g.params.size() > 1 ? g.params[1] : 0.0;
        const double mu = std::cosh(r), nu = std::sinh(r);
        const double c = std::cos(theta), sn = std::sin(theta);
        const int w = g.wires[0];
        op.s(w, w) = mu - c * nu;
        op.s(w, w + m) = sn * nu;
        op.s(w + m, w) = sn * nu;
        op.s(w + m, w + m) = mu + c * nu;
        return op;
    }
    if (g.name == "d") {
        require(g.wires.size() == 1 && !g.params.empty(), "d: one wire, params [r] or [r, phi]");
        const double r = g.params[0];
        const double phi = g.params.size() > 1 ? g.params[1] : 0.0;
        const int w = g.wires[0];
        op.shift(w) = std::sqrt(2.0 * hbar) * r * std::cos(phi);
        op.shift(w + m) = -std::sqrt(2.0 * hbar) * r * std::sin(phi);
        return op;
    }
    if (g.name == "ps" || g.name == "r") {
        require(g.wires.size() == 1 && g.params.size() == 1, "ps: one wire, one phase");
        const int w = g.wires[0];
        const double c = std::cos(g.params[0]), sn = std::sin(g.params[0]);
        op.s(w, w) = c;
        op.s(w, w + m) = sn;
        op.s(w + m, w) = -sn;
        op.s(w + m, w + m) = c;
        return op;
    }
    if (g.wires.size() == 2 && is_linear_optical(g.name)) {
        const cmat u = two_mode_unitary(g);
        const int a = g.wires[0], b = g.wires[1];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const int wi = (i == 0) ? a : b, wj = (j == 0) ? a : b;
                op.s(wi, wj) = u(i, j).real();
                op.s(wi, wj + m) = u(i, j).imag();
                op.s(wi + m, wj) = -u(i, j).imag();
                op.s(wi + m, wj + m) = u(i, j).real();
            }
        return op;
    }
    throw invalid_input("symplectic_of: unsupported gate " + g.name);
}

inline GaussianState evolve(const GaussianState &state, const SymplecticOp &op) {
    GaussianState out = state;
    out.cov() = op.s * state.cov() * op.s.transpose();
    out.mean() = op.s * state.mean() + op.shift;
    return out;
}

/// Pure loss on one wire: V_w -> eta V_w + (1 - eta) (hbar/2) I, d -> sqrt(eta) d.
inline GaussianState apply_loss(const GaussianState &state, int wire, double eta) {
    require(eta >= 0.0 && eta <= 1.0, "apply_loss: transmissivity out of [0, 1]");
    const int m = state.nmode();
    require(wire >= 0 && wire < m, "apply_loss: wire out of range");
    rmat g = rmat::Identity(2 * m, 2 * m);
    const double root = std::sqrt(eta);
    g(wire, wire) = root;
    g(wire + m, wire + m) = root;
    GaussianState out = state;
    out.cov() = g * state.cov() * g.transpose();
    out.cov()(wire, wire) += (1.0 - eta) * 0.5 * state.hbar();
    out.cov()(wire + m, wire + m) += (1.0 - eta) * 0.5 * state.hbar();
    out.mean() = g * state.mean();
    return out;
}

inline GaussianState run_gaussian_circuit(GaussianState state,
                                          const std::vector<PhotonicGate> &gates) {
    for (const auto &g : gates) {
        if (g.name == "loss") {
            require(g.wires.size() == 1 && g.params.size() == 1, "loss: one wire, one eta");
            state = apply_loss(state, g.wires[0], g.params[0]);
        } else {
            state = evolve(state, symplectic_of(g, state.nmode(), state.hbar()));
        }
    }
    return state;
}

namespace detail {

/// Pseudo-inverse of a small symmetric PSD matrix with an eigenvalue floor.
inline rmat psd_pinv(const rmat &a, double floor_rel = 1e-13) {
    Eigen::SelfAdjointEigenSolver<rmat> es(0.5 * (a + a.transpose()));
    const double top = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
    rvec inv = es.eigenvalues();
    for (int i = 0; i < inv.size(); ++i)
        inv(i) = (inv(i) > floor_rel * top) ? 1.0 / inv(i) : 0.0;
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

} // namespace detail

struct HomodyneResult {
    rvec samples;         // one x-quadrature outcome per measured wire
    GaussianState state;  // conditioned, measured wires reset to vacuum
};

/// Conditions the state on exact x-quadrature outcomes of the given wires
/// after rotating each by its phi (so phi = pi/2 measures p). The Schur
/// complement runs over the measured x rows; measured modes are then
/// replaced by vacuum.
inline GaussianState condition_homodyne(const GaussianState &state, const std::vector<int> &wires,
                                        const std::vector<double> &phis, const rvec &outcomes) {
    const int m = state.nmode();
    const int k = static_cast<int>(wires.size());
    require(k >= 1 && static_cast<int>(phis.size()) == k && outcomes.size() == k,
            "condition_homodyne: wires/phis/outcomes mismatch");
    GaussianState rotated = state;
    for (int i = 0; i < k; ++i)
        if (phis[i] != 0.0)
            rotated = evolve(rotated, symplectic_of(pgate("r", {wires[i]}, {phis[i]}), m,
                                                    state.hbar()));

    std::vector<int> a_idx(k);
    for (int i = 0; i < k; ++i) a_idx[i] = wires[i]; // x rows of measured wires
    std::vector<bool> measured(m, false);
    for (int w : wires) measured[w] = true;
    std::vector<int> b_idx;
    for (int i = 0; i < 2 * m; ++i) {
        const bool is_meas_x = (i < m) && measured[i];
        if (!is_meas_x) b_idx.push_back(i);
    }

    const rmat &v = rotated.cov();
    const rvec &mu = rotated.mean();
    rmat vaa(k, k), vba(static_cast<int>(b_idx.size()), k);
    rvec mua(k), mub(static_cast<int>(b_idx.size()));
    for (int i = 0; i < k; ++i) {
        mua(i) = mu(a_idx[i]);
        for (int j = 0; j < k; ++j) vaa(i, j) = v(a_idx[i], a_idx[j]);
    }
    for (std::size_t i = 0; i < b_idx.size(); ++i) {
        mub(static_cast<int>(i)) = mu(b_idx[i]);
        for (int j = 0; j < k; ++j) vba(static_cast<int>(i), j) = v(b_idx[i], a_idx[j]);
    }
    const rmat vaa_inv = detail::psd_pinv(vaa);
    const rvec mub_new = mub + vba * vaa_inv * (outcomes - mua);
    const rmat vbb_new = [&] {
        rmat vbb(b_idx.size(), b_idx.size());
        for (std::size_t i = 0; i < b_idx.size(); ++i)
            for (std::size_t j = 0; j < b_idx.size(); ++j)
                vbb(static_cast<int>(i), static_cast<int>(j)) = v(b_idx[i], b_idx[j]);
        return rmat(vbb - vba * vaa_inv * vba.transpose());
    }();

    // Rebuild the full state: conditioned entries for unmeasured indices,
    // vacuum for the measured modes (their p rows are marginalized away).
    GaussianState out = GaussianState::vacuum(m, state.hbar());
    std::vector<int> pos(2 * m, -1);
    for (std::size_t i = 0; i < b_idx.size(); ++i) pos[b_idx[i]] = static_cast<int>(i);
    for (int i = 0; i < 2 * m; ++i) {
        const int mode_i = i % m;
        if (measured[mode_i] || pos[i] < 0) continue;
        out.mean()(i) = mub_new(pos[i]);
        for (int j = 0; j < 2 * m; ++j) {
            const int mode_j = j % m;
            if (measured[mode_j] || pos[j] < 0) continue;
            out.cov()(i, j) = vbb_new(pos[i], pos[j]);
        }
    }
    return out;
}

/// Samples the measured wires' joint marginal and conditions on the draw.
/// Sampling is wire-by-wire through the exact 1-D conditionals (chain
/// rule): the joint is the same as drawing from the block marginal, but the
/// draw is basis-free, so equal states give equal samples under equal seeds
/// even when the group covariance is degenerate.
inline HomodyneResult measure_homodyne(const GaussianState &state, const std::vector<int> &wires,
                                       const std::vector<double> &phis, Rng &rng) {
    const int m = state.nmode();
    const int k = static_cast<int>(wires.size());
    require(k >= 1 && static_cast<int>(phis.size()) == k, "measure_homodyne: wires/phis mismatch");
    GaussianState rotated = state;
    for (int i = 0; i < k; ++i)
        if (phis[i] != 0.0)
            rotated = evolve(rotated, symplectic_of(pgate("r", {wires[i]}, {phis[i]}), m,
                                                    state.hbar()));
    HomodyneResult out;
    out.samples.resize(k);
    for (int i = 0; i < k; ++i) {
        const int w = wires[i];
        const double mean = rotated.mean()(w);
        const double var = std::max(0.0, rotated.cov()(w, w));
        out.samples(i) = mean + std::sqrt(var) * rng.normal();
        rotated = condition_homodyne(rotated, {w}, {0.0}, rvec::Constant(1, out.samples(i)));
    }
    out.state = std::move(rotated);
    return out;
}

/// Plain i.i.d. homodyne samples of one rotated quadrature (statistics only,
/// no conditioning).
inline std::vector<double> homodyne_samples(const GaussianState &state, int wire, double phi,
                                            int shots, Rng &rng) {
    GaussianState rotated = state;
    if (phi != 0.0)
        rotated = evolve(rotated, symplectic_of(pgate("r", {wire}, {phi}), state.nmode(),
                                                state.hbar()));
    const double mean = rotated.mean()(wire);
    const double var = std::max(0.0, rotated.cov()(wire, wire));
    std::vector<double> out(shots);
    for (int i = 0; i < shots; ++i) out[i] = mean + std::sqrt(var) * rng.normal();
    return out;
}

} // namespace quasar::photonic
