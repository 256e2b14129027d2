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

#include "quasar/photonic/gaussian.hpp"

namespace quasar::photonic {

/// Non-Gaussian state as a weighted mixture of Gaussians in phase space:
/// W(r) = sum_i w_i G(r; V_i, d_i). Weights are complex and sum to 1;
/// interference components carry complex means and appear in conjugate
/// pairs, which keeps the Wigner function real on real grids.
class BosonicState {
  public:
    struct Component {
        cdouble weight{0.0, 0.0};
        rmat cov;  // real 2m x 2m, xxpp
        cvec mean; // complex-allowed 2m
    };

    BosonicState() = default;
    BosonicState(int nmode, double hbar) : nmode_(nmode), hbar_(hbar) {}

    static BosonicState vacuum(int nmode, double hbar = 2.0) {
        BosonicState s(nmode, hbar);
        Component c;
        c.weight = 1.0;
        c.cov = 0.5 * hbar * rmat::Identity(2 * nmode, 2 * nmode);
        c.mean = cvec::Zero(2 * nmode);
        s.comps_.push_back(std::move(c));
        return s;
    }

    int nmode() const { return nmode_; }
    double hbar() const { return hbar_; }
    const std::vector<Component> &components() const { return comps_; }
    std::vector<Component> &components() { return comps_; }

    cdouble weight_sum() const {
        cdouble s(0, 0);
        for (const auto &c : comps_) s += c.weight;
        return s;
    }

    void normalize_weights() {
        const cdouble s = weight_sum();
        if (std::abs(s) < 1e-300) throw guard_error("bosonic: total weight collapsed to zero");
        for (auto &c : comps_) c.weight /= s;
    }

    /// Tensor product: component cross products with xxpp index interleave.
    static BosonicState combine(const BosonicState &a, const BosonicState &b) {
        require(a.hbar() == b.hbar(), "combine: hbar mismatch");
        const int ma = a.nmode(), mb = b.nmode(), m = ma + mb;
        BosonicState out(m, a.hbar());
        for (const auto &ca : a.comps_)
            for (const auto &cb : b.comps_) {
                Component c;
                c.weight = ca.weight * cb.weight;
                c.cov = rmat::Zero(2 * m, 2 * m);
                c.mean = cvec::Zero(2 * m);
                auto map_a = [&](int i) { return (i < ma) ? i : m + (i - ma); };
                auto map_b = [&](int i) { return (i < mb) ? ma + i : m + ma + (i - mb); };
                for (int i = 0; i < 2 * ma; ++i) {
                    c.mean(map_a(i)) = ca.mean(i);
                    for (int j = 0; j < 2 * ma; ++j) c.cov(map_a(i), map_a(j)) = ca.cov(i, j);
                }
                for (int i = 0; i < 2 * mb; ++i) {
                    c.mean(map_b(i)) = cb.mean(i);
                    for (int j = 0; j < 2 * mb; ++j) c.cov(map_b(i), map_b(j)) = cb.cov(i, j);
                }
                out.comps_.push_back(std::move(c));
            }
        return out;
    }

  private:
    int nmode_ = 0;
    double hbar_ = 2.0;
    std::vector<Component> comps_;
};

/// Cat state (|alpha> + e^{i p pi} |-alpha>)/N with alpha = r e^{i theta}:
/// two coherent blobs plus a conjugate pair of interference components with
/// imaginary means.
inline BosonicState init_cat(double r, double theta, int parity, double hbar = 2.0) {
    require(r >= 0.0, "cat: amplitude must be nonnegative");
    require(parity == 0 || parity == 1, "cat: parity flag is 0 (even) or 1 (odd)");
    const double phi = parity * kPi;
    const cdouble alpha = r * std::exp(cdouble(0, theta));
    const double overlap = std::exp(-2.0 * r * r); // <-alpha|alpha>
    const double norm = 2.0 * (1.0 + std::cos(phi) * overlap);
    require(norm > 1e-12, "cat: vanishing normalization (odd cat needs alpha > 0)");

    BosonicState out(1, hbar);
    const rmat v = 0.5 * hbar * rmat::Identity(2, 2);
    const double s2h = std::sqrt(2.0 * hbar);
    auto blob = [&](cdouble w, cdouble beta, cdouble gamma) {
        BosonicState::Component c;
        c.weight = w;
        c.cov = v;
        c.mean = cvec(2);
        const cdouble gbar = std::conj(gamma);
        c.mean(0) = std::sqrt(hbar / 2.0) * (beta + gbar);
        c.mean(1) = std::sqrt(hbar / 2.0) * (beta - gbar) / cdouble(0, 1);
        return c;
    };
    out.components().push_back(blob(1.0 / norm, alpha, alpha));
    out.components().push_back(blob(1.0 / norm, -alpha, -alpha));
    const cdouble wc = std::exp(cdouble(0, -phi)) * overlap / norm;
    out.components().push_back(blob(wc, alpha, -alpha));
    out.components().push_back(blob(std::conj(wc), -alpha, alpha));
    return out;
}

/// Finite-energy GKP state cos(t/2)|0> + e^{-i phi} sin(t/2)|1> under the
/// damping e^{-eps n}: a comb of identical Gaussians at the scaled lattice
/// points mu = (2z/(1+z^2)) (k_q, k_p) sqrt(pi hbar)/2 with z = e^{-eps},
/// shared covariance (hbar/2)(1-z^2)/(1+z^2) I, and real signed weights
/// c(k_q, k_p) exp(-(1-z^2)/(hbar(1+z^2)) |mu_ideal|^2). Components below
/// amp_cutoff * max|w| are dropped, then weights renormalize.
struct GKPSpec {
    double theta = 0.0;
    double phi = 0.0;
    double epsilon = 0.05;
    double amp_cutoff = 0.1;
};

inline BosonicState init_gkp(const GKPSpec &spec, double hbar = 2.0,
                             std::size_t component_cap = 100000) {
    require(spec.epsilon > 0.0, "gkp: epsilon must be positive");
    require(spec.amp_cutoff >= 0.0 && spec.amp_cutoff < 1.0, "gkp: amp_cutoff in [0, 1)");
    const double z = std::exp(-spec.epsilon);
    const double z2 = z * z;
    const double damp = (1.0 - z2) / (hbar * (1.0 + z2));
    const double mean_scale = 2.0 * z / (1.0 + z2);
    const double var = 0.5 * hbar * (1.0 - z2) / (1.0 + z2);
    const double cell = std::sqrt(kPi * hbar) / 2.0;

    const double floor = std::max(spec.amp_cutoff, 1e-12);
    const int kmax = static_cast<int>(std::ceil(std::sqrt(std::log(1.0 / floor) / damp) / cell)) + 1;
    const double ct = std::cos(spec.theta), st = std::sin(spec.theta);
    const double cp = std::cos(spec.phi), sp = std::sin(spec.phi);

    struct Raw {
        double w;
        double q, p;
    };
    std::vector<Raw> raw;
    double wmax = 0.0;
    for (int kq = -kmax; kq <= kmax; ++kq)
        for (int kp = -kmax; kp <= kmax; ++kp) {
            double coeff;
            if ((kq & 1) == 0) {
                if ((kp & 1) == 0)
                    coeff = 1.0;
                else
                    coeff = ((kq / 2) % 2 == 0 ? 1.0 : -1.0) * ct;
            } else {
                if ((kp & 1) == 0)
                    coeff = ((kp / 2) % 2 == 0 ? 1.0 : -1.0) * st * cp;
                else
                    coeff = -(((kq - 1) / 2) % 2 == 0 ? 1.0 : -1.0) *
                            (((1 - kp) / 2) % 2 == 0 ? 1.0 : -1.0) * st * sp;
            }
            if (coeff == 0.0) continue;
            const double q = kq * cell, p = kp * cell;
            const double w = coeff * std::exp(-damp * (q * q + p * p));
            if (w != 0.0) {
                raw.push_back({w, q, p});
                wmax = std::max(wmax, std::abs(w));
            }
        }

    BosonicState out(1, hbar);
    for (const auto &r : raw) {
        if (std::abs(r.w) < spec.amp_cutoff * wmax) continue;
        BosonicState::Component c;
        c.weight = r.w;
        c.cov = var * rmat::Identity(2, 2);
        c.mean = cvec(2);
        c.mean(0) = mean_scale * r.q;
        c.mean(1) = mean_scale * r.p;
        out.components().push_back(std::move(c));
        if (out.components().size() > component_cap)
            throw guard_error("gkp: component cap exceeded");
    }
    if (out.components().empty()) throw guard_error("gkp: no components survive amp_cutoff");
    out.normalize_weights();
    return out;
}

/// Applies (S, shift) to every component; weights unchanged.
inline BosonicState evolve_bosonic(const BosonicState &state, const SymplecticOp &op) {
    BosonicState out = state;
    for (auto &c : out.components()) {
        c.cov = op.s * c.cov * op.s.transpose();
        c.mean = op.s.cast<cdouble>() * c.mean + op.shift.cast<cdouble>();
    }
    return out;
}

inline BosonicState run_bosonic_circuit(BosonicState state,
                                        const std::vector<PhotonicGate> &gates) {
    for (const auto &g : gates)
        state = evolve_bosonic(state, symplectic_of(g, state.nmode(), state.hbar()));
    return state;
}

namespace detail {

inline cdouble wigner_accumulate(const BosonicState &state, int wire, double x, double p) {
    const int m = state.nmode();
    cdouble acc(0, 0);
    for (const auto &c : state.components()) {
        const double v00 = c.cov(wire, wire), v01 = c.cov(wire, wire + m);
        const double v10 = c.cov(wire + m, wire), v11 = c.cov(wire + m, wire + m);
        const double det = v00 * v11 - v01 * v10;
        const cdouble dx = x - c.mean(wire), dp = p - c.mean(wire + m);
        const cdouble quad = (v11 * dx * dx - (v01 + v10) * dx * dp + v00 * dp * dp) / det;
        acc += c.weight / (2.0 * kPi * std::sqrt(det)) * std::exp(-0.5 * quad);
    }
    return acc;
}

} // namespace detail

/// Wigner value at one phase-space point; the conjugate pairing must keep
/// the imaginary residue under imag_tol.
inline double wigner_at(const BosonicState &state, int wire, double x, double p,
                        double imag_tol = 1e-8) {
    require(wire >= 0 && wire < state.nmode(), "wigner: wire out of range");
    const cdouble acc = detail::wigner_accumulate(state, wire, x, p);
    if (std::abs(acc.imag()) > imag_tol)
        throw guard_error("wigner: imaginary residue above tolerance");
    return acc.real();
}

/// Single-mode Wigner function on a grid (rows: x, columns: p).
inline rmat wigner(const BosonicState &state, int wire, const std::vector<double> &xs,
                   const std::vector<double> &ps, double imag_tol = 1e-8) {
    require(wire >= 0 && wire < state.nmode(), "wigner: wire out of range");
    rmat grid(xs.size(), ps.size());
    double max_imag = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ps.size(); ++j) {
            const cdouble val = detail::wigner_accumulate(state, wire, xs[i], ps[j]);
            grid(i, j) = val.real();
            max_imag = std::max(max_imag, std::abs(val.imag()));
        }
    if (max_imag > imag_tol) throw guard_error("wigner: imaginary residue above tolerance");
    return grid;
}

struct BosonicConditioned {
    BosonicState state;  // measured mode removed
    double acceptance = 0.0;
};

/// Homodyne conditioning at outcome y on one wire's rotated quadrature
/// (phi = pi/2 measures p). Component weights pick up the (complex) Gaussian
/// likelihood of y, means/covariances get the Schur update, and the measured
/// mode is removed. Acceptance is the marginal density mass of the window
/// [y - w, y + w], integrated numerically.
inline BosonicConditioned condition_homodyne(const BosonicState &state, int wire, double y,
                                             double phi = 0.0, double window_halfwidth = 0.0) {
    const int m = state.nmode();
    require(m >= 1 && wire >= 0 && wire < m, "condition_homodyne: wire out of range");
    BosonicState rotated = state;
    if (phi != 0.0)
        rotated = evolve_bosonic(state, symplectic_of(pgate("r", {wire}, {phi}), m, state.hbar()));

    // index bookkeeping: measured index a = wire (x row); the measured
    // mode's p row is dropped with the mode
    std::vector<int> keep; // indices of the surviving (m-1)-mode state, xxpp
    for (int i = 0; i < m; ++i)
        if (i != wire) keep.push_back(i);
    for (int i = 0; i < m; ++i)
        if (i != wire) keep.push_back(i + m);

    auto density_at = [&](double t) {
        cdouble acc(0, 0);
        for (const auto &c : rotated.components()) {
            const double s2 = c.cov(wire, wire);
            const cdouble dx = t - c.mean(wire);
            acc += c.weight * std::exp(-0.5 * dx * dx / s2) / std::sqrt(2.0 * kPi * s2);
        }
        return acc.real();
    };

    BosonicConditioned out;
    out.state = BosonicState(m - 1, state.hbar());
    cdouble total(0, 0);
    for (const auto &c : rotated.components()) {
        const double s2 = c.cov(wire, wire);
        const cdouble dx = y - c.mean(wire);
        const cdouble like = std::exp(-0.5 * dx * dx / s2) / std::sqrt(2.0 * kPi * s2);
        BosonicState::Component nc;
        nc.weight = c.weight * like;
        total += nc.weight;
        nc.mean = cvec(2 * (m - 1));
        nc.cov = rmat(2 * (m - 1), 2 * (m - 1));
        for (std::size_t i = 0; i < keep.size(); ++i) {
            nc.mean(i) = c.mean(keep[i]) + c.cov(keep[i], wire) / s2 * dx;
            for (std::size_t j = 0; j < keep.size(); ++j)
                nc.cov(i, j) = c.cov(keep[i], keep[j]) - c.cov(keep[i], wire) * c.cov(wire, keep[j]) / s2;
        }
        out.state.components().push_back(std::move(nc));
    }
    if (std::abs(total) < 1e-300)
        throw guard_error("condition_homodyne: acceptance collapsed to zero");
    for (auto &c : out.state.components()) c.weight /= total;

    if (window_halfwidth > 0.0) {
        // 64-point midpoint rule over the window; the density is smooth
        const int nq = 64;
        double mass = 0.0;
        for (int i = 0; i < nq; ++i) {
            const double t = y - window_halfwidth + (2.0 * window_halfwidth) * (i + 0.5) / nq;
            mass += density_at(t);
        }
        out.acceptance = mass * (2.0 * window_halfwidth / nq);
    } else {
        out.acceptance = density_at(y);
    }
    return out;
}

} // namespace quasar::photonic
