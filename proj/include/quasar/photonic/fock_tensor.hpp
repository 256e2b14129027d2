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

#include "quasar/photonic/fock_basis.hpp"

namespace quasar::photonic {

/// Squeezer matrix elements <n| S(r, theta) |m> up to the cutoff, by the
/// stable two-term recurrence (no factorial ratios, safe at cutoff 50+).
/// Convention: S^+ a S = a cosh r - a^+ e^{i theta} sinh r.
inline cmat squeezer_matrix(double r, double theta, int cutoff) {
    require(cutoff >= 2, "squeezer_matrix: cutoff >= 2 required");
    const double mu = std::cosh(r);
    const cdouble nu = std::exp(cdouble(0, theta)) * std::sinh(r);
    cmat s = cmat::Zero(cutoff, cutoff);
    // column 0: squeezed vacuum, even rows only
    s(0, 0) = 1.0 / std::sqrt(mu);
    for (int n = 2; n < cutoff; n += 2)
        s(n, 0) = -(nu / mu) * std::sqrt((n - 1.0) / n) * s(n - 2, 0);
    // row 0 via S(z)^+ = S(-z)
    for (int m = 2; m < cutoff; m += 2)
        s(0, m) = (std::conj(nu) / mu) * std::sqrt((m - 1.0) / m) * s(0, m - 2);
    // interior: S_{n+1,m} = [sqrt(m) S_{n,m-1} - nu sqrt(n) S_{n-1,m}] / (mu sqrt(n+1))
    for (int m = 1; m < cutoff; ++m)
        for (int n = 0; n + 1 < cutoff; ++n) {
            cdouble acc = std::sqrt(static_cast<double>(m)) * s(n, m - 1);
            if (n >= 1) acc -= nu * std::sqrt(static_cast<double>(n)) * s(n - 1, m);
            s(n + 1, m) = acc / (mu * std::sqrt(n + 1.0));
        }
    return s;
}

/// Photon-loss Kraus operators for transmissivity eta, truncated at cutoff.
inline std::vector<cmat> loss_kraus(double eta, int cutoff) {
    require(eta >= 0.0 && eta <= 1.0, "loss: transmissivity out of [0, 1]");
    std::vector<cmat> ks;
    for (int k = 0; k < cutoff; ++k) {
        cmat m = cmat::Zero(cutoff, cutoff);
        bool nonzero = false;
        for (int n = k; n < cutoff; ++n) {
            double binom = 1.0;
            for (int i = 0; i < k; ++i) binom = binom * (n - i) / (i + 1);
            const double amp = std::sqrt(binom * std::pow(eta, n - k) * std::pow(1.0 - eta, k));
            if (amp != 0.0) nonzero = true;
            m(n - k, n) = amp;
        }
        if (nonzero || k == 0) ks.push_back(std::move(m));
    }
    return ks;
}

/// Dense Fock tensor state: pure rank-N tensor of shape (d, ..., d) stored
/// flat with mode 0 slowest, or a rank-2N density tensor once a loss channel
/// has been applied. Truncation never renormalizes mid-circuit; the
/// cumulative lost mass is reported on the state.
class FockTensorState {
  public:
    FockTensorState() = default;

    static FockTensorState vacuum(int nmode, int cutoff) {
        return from_occupation(Occupation(nmode, 0), cutoff);
    }

    static FockTensorState from_occupation(const Occupation &occ, int cutoff) {
        require(cutoff >= 2, "FockTensorState: cutoff >= 2 required");
        FockTensorState s;
        s.nmode_ = static_cast<int>(occ.size());
        s.cutoff_ = cutoff;
        require(s.nmode_ >= 1, "FockTensorState: need at least one mode");
        for (int v : occ) require(v >= 0 && v < cutoff, "FockTensorState: occupation >= cutoff");
        s.pure_.assign(s.dim(), cdouble(0, 0));
        s.pure_[s.flat_index(occ)] = 1.0;
        return s;
    }

    int nmode() const { return nmode_; }
    int cutoff() const { return cutoff_; }
    bool is_mixed() const { return mixed_.size() > 0; }
    double truncation_loss() const { return trunc_loss_; }
    std::size_t dim() const {
        std::size_t d = 1;
        for (int i = 0; i < nmode_; ++i) d *= cutoff_;
        return d;
    }

    std::size_t flat_index(const Occupation &occ) const {
        std::size_t idx = 0;
        for (int k = 0; k < nmode_; ++k) idx = idx * cutoff_ + occ[k];
        return idx;
    }

    cdouble amplitude(const Occupation &occ) const {
        require(!is_mixed(), "amplitude: pure states only");
        return pure_[flat_index(occ)];
    }

    double norm2() const {
        if (!is_mixed()) {
            double s = 0.0;
            for (const auto &a : pure_) s += std::norm(a);
            return s;
        }
        return mixed_.trace().real();
    }

    const std::vector<cdouble> &amplitudes() const { return pure_; }
    std::vector<cdouble> &amplitudes() { return pure_; }
    const cmat &density() const { return mixed_; }

    void promote_to_mixed() {
        if (is_mixed()) return;
        Eigen::Map<const cvec> v(pure_.data(), static_cast<long>(pure_.size()));
        mixed_ = v * v.adjoint();
        pure_.clear();
    }

    std::size_t stride(int mode) const {
        std::size_t s = 1;
        for (int k = mode + 1; k < nmode_; ++k) s *= cutoff_;
        return s;
    }

    void add_truncation_loss(double delta) { trunc_loss_ += std::max(0.0, delta); }
    void set_pure(std::vector<cdouble> v, int nmode, int cutoff) {
        pure_ = std::move(v);
        mixed_.resize(0, 0);
        nmode_ = nmode;
        cutoff_ = cutoff;
    }
    void set_mixed(cmat rho) {
        mixed_ = std::move(rho);
        pure_.clear();
    }

  private:
    int nmode_ = 0;
    int cutoff_ = 0;
    std::vector<cdouble> pure_;
    cmat mixed_;
    double trunc_loss_ = 0.0;
};

namespace detail {

/// Applies a cutoff x cutoff matrix on one mode of a flat pure tensor.
inline void apply_single_mode(std::vector<cdouble> &x, const cmat &m, int mode, int nmode,
                              int d) {
    std::size_t stride = 1;
    for (int k = mode + 1; k < nmode; ++k) stride *= d;
    const std::size_t dim = x.size();
    const std::size_t block = stride * d;
    std::vector<cdouble> v(d), w(d);
    for (std::size_t hi = 0; hi < dim; hi += block)
        for (std::size_t lo = 0; lo < stride; ++lo) {
            for (int j = 0; j < d; ++j) v[j] = x[hi + j * stride + lo];
            for (int i = 0; i < d; ++i) {
                cdouble acc(0, 0);
                for (int j = 0; j < d; ++j) acc += m(i, j) * v[j];
                w[i] = acc;
            }
            for (int i = 0; i < d; ++i) x[hi + i * stride + lo] = w[i];
        }
}

/// Total-photon blocks of the two-mode Fock operator Phi(U), built from the
/// second-quantized generator G = log U: within the n-photon subspace
/// {|j, n-j>}, i G_hat is a Hermitian tridiagonal matrix, so each block is a
/// small eigendecomposition.
inline std::vector<cmat> two_mode_blocks(const cmat &u, int nmax) {
    require(u.rows() == 2 && u.cols() == 2, "two_mode_blocks: 2x2 unitary expected");
    // principal log via diagonalization (2x2 unitary is normal)
    cmat g(2, 2);
    const cmat delta = u - u(0, 0) * cmat::Identity(2, 2);
    if (delta.cwiseAbs().maxCoeff() < 1e-14) {
        g = std::log(u(0, 0)) * cmat::Identity(2, 2);
    } else {
        Eigen::ComplexEigenSolver<cmat> es(u);
        cmat v = es.eigenvectors();
        // orthonormalize (distinct eigenvalues of a normal matrix)
        v.col(0).normalize();
        v.col(1) -= v.col(0) * v.col(0).dot(v.col(1));
        v.col(1).normalize();
        cvec lg(2);
        lg(0) = std::log(es.eigenvalues()(0));
        lg(1) = std::log(es.eigenvalues()(1));
        g = v * lg.asDiagonal() * v.adjoint();
    }
    std::vector<cmat> blocks;
    blocks.reserve(nmax + 1);
    for (int n = 0; n <= nmax; ++n) {
        cmat h = cmat::Zero(n + 1, n + 1); // i * G_hat restricted to the block
        for (int j = 0; j <= n; ++j) {
            h(j, j) = cdouble(0, 1) * (g(0, 0) * static_cast<double>(j) +
                                       g(1, 1) * static_cast<double>(n - j));
            if (j + 1 <= n)
                h(j + 1, j) = cdouble(0, 1) * g(0, 1) * std::sqrt((j + 1.0) * (n - j));
            if (j - 1 >= 0)
                h(j - 1, j) = cdouble(0, 1) * g(1, 0) * std::sqrt(static_cast<double>(j) * (n - j + 1.0));
        }
        Eigen::SelfAdjointEigenSolver<cmat> es(h);
        cvec ph(n + 1);
        for (int i = 0; i <= n; ++i) ph(i) = std::exp(cdouble(0, -es.eigenvalues()(i)));
        blocks.push_back(es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint());
    }
    return blocks;
}

/// Applies a photon-conserving two-mode gate blockwise on modes (a, b).
/// Blocks with total photons above the cutoff window are truncated; the
/// caller accounts the lost mass via the norm change.
inline void apply_two_mode_blocks(std::vector<cdouble> &x, const std::vector<cmat> &blocks,
                                  int mode_a, int mode_b, int nmode, int d) {
    std::size_t stride_a = 1, stride_b = 1;
    for (int k = mode_a + 1; k < nmode; ++k) stride_a *= d;
    for (int k = mode_b + 1; k < nmode; ++k) stride_b *= d;
    const std::size_t dim = x.size();
    std::vector<cdouble> v, w;
    for (std::size_t base = 0; base < dim; ++base) {
        // digits of base at modes a and b must be zero
        if ((base / stride_a) % d != 0 || (base / stride_b) % d != 0) continue;
        for (int n = 0; n < static_cast<int>(blocks.size()); ++n) {
            const int jlo = std::max(0, n - (d - 1));
            const int jhi = std::min(n, d - 1);
            if (jlo > jhi) continue;
            const int len = jhi - jlo + 1;
            v.assign(len, cdouble(0, 0));
            for (int j = jlo; j <= jhi; ++j)
                v[j - jlo] = x[base + static_cast<std::size_t>(j) * stride_a +
                               static_cast<std::size_t>(n - j) * stride_b];
            const cmat &b = blocks[n];
            w.assign(len, cdouble(0, 0));
            for (int i = jlo; i <= jhi; ++i) {
                cdouble acc(0, 0);
                for (int j = jlo; j <= jhi; ++j) acc += b(i, j) * v[j - jlo];
                w[i - jlo] = acc;
            }
            for (int i = jlo; i <= jhi; ++i)
                x[base + static_cast<std::size_t>(i) * stride_a +
                  static_cast<std::size_t>(n - i) * stride_b] = w[i - jlo];
        }
    }
}

inline cmat single_mode_matrix(const PhotonicGate &g, int cutoff) {
    if (g.name == "ps" || g.name == "r") {
        require(g.params.size() == 1, "ps: one phase parameter");
        cmat m = cmat::Zero(cutoff, cutoff);
        for (int n = 0; n < cutoff; ++n) m(n, n) = std::exp(cdouble(0, g.params[0] * n));
        return m;
    }
    if (g.name == "s") {
        require(!g.params.empty(), "s: params [r] or [r, theta]");
        const double r = g.params[0];
        const double theta = g.params.size() > 1 ? g.params[1] : 0.0;
        return squeezer_matrix(r, theta, cutoff);
    }
    throw invalid_input("unsupported single-mode Fock gate: " + g.name);
}

} // namespace detail

/// Applies one gate to the state tensor via contraction over the target
/// modes. Unitary-in-principle gates may still lose mass to the cutoff
/// (squeezers always, photon-conserving gates when a block sticks out); the
/// lost mass accumulates in truncation_loss, never silently renormalized.
inline FockTensorState evolve_tensor(const FockTensorState &state, const PhotonicGate &g) {
    FockTensorState out = state;
    const int d = state.cutoff();
    const int nmode = state.nmode();
    for (int w : g.wires) require(w >= 0 && w < nmode, "evolve_tensor: wire out of range");

    if (g.name == "loss") {
        require(g.wires.size() == 1 && g.params.size() == 1, "loss: one wire, one transmissivity");
        out.promote_to_mixed();
        const auto ks = loss_kraus(g.params[0], d);
        // rho' = sum_k K rho K^+, applied mode-locally on rows then columns
        const cmat &rho = out.density();
        cmat next = cmat::Zero(rho.rows(), rho.cols());
        for (const auto &k : ks) {
            cmat term = rho;
            for (long col = 0; col < term.cols(); ++col) {
                std::vector<cdouble> v(term.rows());
                for (long r = 0; r < term.rows(); ++r) v[r] = term(r, col);
                detail::apply_single_mode(v, k, g.wires[0], nmode, d);
                for (long r = 0; r < term.rows(); ++r) term(r, col) = v[r];
            }
            for (long row = 0; row < term.rows(); ++row) {
                std::vector<cdouble> v(term.cols());
                for (long c = 0; c < term.cols(); ++c) v[c] = term(row, c);
                detail::apply_single_mode(v, k.conjugate(), g.wires[0], nmode, d);
                for (long c = 0; c < term.cols(); ++c) term(row, c) = v[c];
            }
            next += term;
        }
        out.set_mixed(std::move(next));
        out.add_truncation_loss(state.norm2() - out.norm2());
        return out;
    }

    require(!state.is_mixed(), "evolve_tensor: only the loss channel acts on mixed tensors");
    const double before = out.norm2();
    if (g.wires.size() == 1) {
        const cmat m = detail::single_mode_matrix(g, d);
        detail::apply_single_mode(out.amplitudes(), m, g.wires[0], nmode, d);
    } else if (g.wires.size() == 2) {
        const cmat u = two_mode_unitary(g);
        const auto blocks = detail::two_mode_blocks(u, 2 * (d - 1));
        detail::apply_two_mode_blocks(out.amplitudes(), blocks, g.wires[0], g.wires[1], nmode, d);
    } else {
        throw invalid_input("evolve_tensor: gates act on one or two modes");
    }
    out.add_truncation_loss(before - out.norm2());
    return out;
}

inline FockTensorState run_tensor_circuit(FockTensorState state,
                                          const std::vector<PhotonicGate> &gates) {
    for (const auto &g : gates) state = evolve_tensor(state, g);
    return state;
}

/// Probabilities of every occupation (pure tensors), normalized by the
/// retained mass only if the caller asks.
inline std::map<Occupation, double> tensor_distribution(const FockTensorState &state) {
    require(!state.is_mixed(), "tensor_distribution: pure states only");
    std::map<Occupation, double> dist;
    const int d = state.cutoff(), n = state.nmode();
    Occupation occ(n, 0);
    const auto &amps = state.amplitudes();
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        const double p = std::norm(amps[idx]);
        if (p > 0) {
            std::size_t rest = idx;
            for (int k = n - 1; k >= 0; --k) {
                occ[k] = static_cast<int>(rest % d);
                rest /= d;
            }
            dist[occ] = p;
        }
    }
    return dist;
}

/// Wigner function of a single-mode Fock-basis vector via the displaced
/// parity expansion: W = (1/pi hbar) sum_{n>=m} (-1)^m sqrt(m!/n!)
/// L_m^{n-m}(|b|^2) e^{-|b|^2/2} * Re-paired c_m c_n^* b^{n-m}, where
/// b = sqrt(2/hbar) (x + i p).
inline double wigner_from_fock(const std::vector<cdouble> &amps, double x, double p,
                               double hbar = 2.0) {
    const cdouble beta = std::sqrt(2.0 / hbar) * cdouble(x, p);
    const double arg = std::norm(beta);
    const double damp = std::exp(-0.5 * arg);
    const int dim = static_cast<int>(amps.size());
    double total = 0.0;
    for (int m = 0; m < dim; ++m) {
        if (std::abs(amps[m]) < 1e-18) continue;
        for (int n = m; n < dim; ++n) {
            const cdouble cc = amps[m] * std::conj(amps[n]);
            if (std::abs(cc) < 1e-18) continue;
            const int d = n - m;
            double pref = 1.0;
            for (int k = m + 1; k <= n; ++k) pref /= std::sqrt(static_cast<double>(k));
            // generalized Laguerre L_m^d(arg) by the three-term recurrence
            double l0 = 1.0, l1 = 1.0 + d - arg, lag = (m == 0) ? 1.0 : l1;
            for (int k = 2; k <= m; ++k) {
                const double lk = ((2 * k - 1 + d - arg) * l1 - (k - 1 + d) * l0) / k;
                l0 = l1;
                l1 = lk;
                lag = lk;
            }
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            const cdouble term = sign * pref * lag * damp * cc * std::pow(beta, d);
            total += (d == 0) ? term.real() : 2.0 * term.real();
        }
    }
    return total / (kPi * hbar);
}

/// Projects the given modes onto fixed photon numbers, drops them, and
/// renormalizes the rest. Returns the post-selected state on the remaining
/// modes plus the success probability (relative to the retained mass).
struct TensorPostSelected {
    FockTensorState state;
    double success = 0.0;
};

inline TensorPostSelected post_select_tensor(const FockTensorState &state,
                                             const std::map<int, int> &selections) {
    require(!state.is_mixed(), "post_select_tensor: pure states only");
    const int n = state.nmode(), d = state.cutoff();
    require(!selections.empty() && static_cast<int>(selections.size()) < n,
            "post_select_tensor: need a proper subset of modes");
    for (const auto &[mode, value] : selections) {
        require(mode >= 0 && mode < n, "post_select_tensor: mode out of range");
        require(value >= 0 && value < d, "post_select_tensor: photon value out of cutoff");
    }
    std::vector<int> kept;
    for (int k = 0; k < n; ++k)
        if (!selections.count(k)) kept.push_back(k);

    const int nk = static_cast<int>(kept.size());
    std::size_t out_dim = 1;
    for (int k = 0; k < nk; ++k) out_dim *= d;
    std::vector<cdouble> sub(out_dim, cdouble(0, 0));

    const auto &amps = state.amplitudes();
    Occupation occ(n, 0);
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        std::size_t rest = idx;
        for (int k = n - 1; k >= 0; --k) {
            occ[k] = static_cast<int>(rest % d);
            rest /= d;
        }
        bool match = true;
        for (const auto &[mode, value] : selections)
            if (occ[mode] != value) {
                match = false;
                break;
            }
        if (!match) continue;
        std::size_t oidx = 0;
        for (int k = 0; k < nk; ++k) oidx = oidx * d + occ[kept[k]];
        sub[oidx] = amps[idx];
    }

    double mass = 0.0;
    for (const auto &a : sub) mass += std::norm(a);
    const double total = state.norm2();
    if (mass <= 0.0 || total <= 0.0)
        throw guard_error("post_select_tensor: zero-probability selection");
    const double scale = 1.0 / std::sqrt(mass);
    for (auto &a : sub) a *= scale;

    TensorPostSelected out;
    out.state.set_pure(std::move(sub), nk, d);
    out.success = mass / total;
    return out;
}

} // namespace quasar::photonic
