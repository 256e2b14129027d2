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

#include "quasar/core.hpp"

namespace quasar::mps {

/// Site tensor with shape (left bond, physical, right bond), stored flat as
/// ((a * d + s) * right + b).
struct SiteTensor {
    int left = 1, phys = 2, right = 1;
    std::vector<cdouble> data;

    cdouble &at(int a, int s, int b) {
        return data[(static_cast<std::size_t>(a) * phys + s) * right + b];
    }
    cdouble at(int a, int s, int b) const {
        return data[(static_cast<std::size_t>(a) * phys + s) * right + b];
    }
    static SiteTensor zeros(int l, int d, int r) {
        SiteTensor t;
        t.left = l;
        t.phys = d;
        t.right = r;
        t.data.assign(static_cast<std::size_t>(l) * d * r, cdouble(0, 0));
        return t;
    }
};

/// Open-boundary matrix product state in mixed canonical form: sites left
/// of `center` are left-orthonormal, sites right of it right-orthonormal.
/// SVD splits keep every singular value (zeros included) up to chi_max;
/// weight actually dropped accumulates in truncation_error and is never
/// silently renormalized away.
class MPSState {
  public:
    MPSState() = default;

    /// Product state |occ[0], occ[1], ...>, bond dimension 1.
    static MPSState product(const std::vector<int> &occ, int phys_dim, int chi_max) {
        MPSState s;
        s.phys_ = phys_dim;
        s.chi_ = chi_max;
        for (int v : occ) {
            require(v >= 0 && v < phys_dim, "mps: occupation outside physical dimension");
            SiteTensor t = SiteTensor::zeros(1, phys_dim, 1);
            t.at(0, v, 0) = 1.0;
            s.sites_.push_back(std::move(t));
        }
        s.center_ = 0;
        return s;
    }

    /// Dense amplitude tensor (site 0 slowest index) -> MPS by the
    /// sequential reshape + SVD sweep. Exact when chi covers the maximal
    /// Schmidt rank; otherwise the discarded weight is recorded.
    static MPSState from_dense(const cvec &amps, int nsite, int phys_dim, int chi_max) {
        std::size_t want = 1;
        for (int i = 0; i < nsite; ++i) want *= phys_dim;
        require(static_cast<std::size_t>(amps.size()) == want, "from_dense: length mismatch");
        require(amps.norm() > 1e-12, "from_dense: zero-norm input");

        MPSState s;
        s.phys_ = phys_dim;
        s.chi_ = chi_max;
        // rest: row-major buffer of logical shape (chi_left, rem)
        std::vector<cdouble> rest(amps.data(), amps.data() + amps.size());
        long chi_left = 1;
        long rem = static_cast<long>(want);
        for (int k = 0; k < nsite - 1; ++k) {
            const long rows = chi_left * phys_dim;
            const long cols = rem / phys_dim;
            cmat m(rows, cols);
            for (long a = 0; a < chi_left; ++a)
                for (int ph = 0; ph < phys_dim; ++ph)
                    for (long t = 0; t < cols; ++t)
                        m(a * phys_dim + ph, t) = rest[a * rem + ph * cols + t];
            Eigen::BDCSVD<cmat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
            // construction drops numerically-zero singular values (product
            // states get bond 1); gate splits keep them, capped at chi
            const double floor = 1e-14 * svd.singularValues()(0);
            long rank = 1;
            while (rank < svd.singularValues().size() && svd.singularValues()(rank) > floor)
                ++rank;
            const long keep = std::min<long>(rank, chi_max);
            double dropped = 0.0;
            for (long i = keep; i < svd.singularValues().size(); ++i)
                dropped += svd.singularValues()(i) * svd.singularValues()(i);
            s.trunc_err_ += dropped;

            SiteTensor t = SiteTensor::zeros(static_cast<int>(chi_left), phys_dim,
                                             static_cast<int>(keep));
            for (long a = 0; a < chi_left; ++a)
                for (int ph = 0; ph < phys_dim; ++ph)
                    for (long b = 0; b < keep; ++b)
                        t.at(static_cast<int>(a), ph, static_cast<int>(b)) =
                            svd.matrixU()(a * phys_dim + ph, b);
            s.sites_.push_back(std::move(t));

            const cmat next = svd.singularValues().head(keep).asDiagonal() *
                              svd.matrixV().leftCols(keep).adjoint(); // keep x cols
            rest.assign(static_cast<std::size_t>(keep) * cols, cdouble(0, 0));
            for (long c = 0; c < keep; ++c)
                for (long t2 = 0; t2 < cols; ++t2) rest[c * cols + t2] = next(c, t2);
            chi_left = keep;
            rem = cols;
        }
        SiteTensor last = SiteTensor::zeros(static_cast<int>(chi_left), phys_dim, 1);
        for (long a = 0; a < chi_left; ++a)
            for (int ph = 0; ph < phys_dim; ++ph)
                last.at(static_cast<int>(a), ph, 0) = rest[a * phys_dim + ph];
        s.sites_.push_back(std::move(last));
        s.center_ = nsite - 1;
        return s;
    }

    int nsite() const { return static_cast<int>(sites_.size()); }
    int phys_dim() const { return phys_; }
    int chi_max() const { return chi_; }
    int center() const { return center_; }
    double truncation_error() const { return trunc_err_; }
    const SiteTensor &site(int k) const { return sites_.at(k); }

    std::vector<std::array<int, 3>> shapes() const {
        std::vector<std::array<int, 3>> out;
        for (const auto &t : sites_) out.push_back({t.left, t.phys, t.right});
        return out;
    }

    cvec to_dense() const {
        const int n = nsite();
        cmat acc(1, 1);
        acc(0, 0) = 1.0;
        std::size_t dim = 1;
        // acc has shape (dim, chi_right); grow site by site
        for (int k = 0; k < n; ++k) {
            const SiteTensor &t = sites_[k];
            cmat next = cmat::Zero(dim * t.phys, t.right);
            for (std::size_t i = 0; i < dim; ++i)
                for (int s = 0; s < t.phys; ++s)
                    for (int b = 0; b < t.right; ++b) {
                        cdouble v(0, 0);
                        for (int a = 0; a < t.left; ++a) v += acc(i, a) * t.at(a, s, b);
                        next(i * t.phys + s, b) = v;
                    }
            acc = std::move(next);
            dim *= t.phys;
        }
        return acc.col(0);
    }

    double norm() const {
        // contract <psi|psi> through the chain (robust to non-canonical data)
        cmat env = cmat::Ones(1, 1);
        for (const auto &t : sites_) {
            cmat next = cmat::Zero(t.right, t.right);
            for (int b1 = 0; b1 < t.right; ++b1)
                for (int b2 = 0; b2 < t.right; ++b2) {
                    cdouble v(0, 0);
                    for (int a1 = 0; a1 < t.left; ++a1)
                        for (int a2 = 0; a2 < t.left; ++a2) {
                            if (env(a1, a2) == cdouble(0, 0)) continue;
                            cdouble partial(0, 0);
                            for (int s = 0; s < t.phys; ++s)
                                partial += std::conj(t.at(a1, s, b1)) * t.at(a2, s, b2);
                            v += env(a1, a2) * partial;
                        }
                    next(b1, b2) = v;
                }
            env = std::move(next);
        }
        return std::sqrt(std::abs(env(0, 0).real()));
    }

    void normalize() {
        const double n = norm();
        require(n > 1e-300, "mps normalize: zero norm");
        auto &t = sites_[center_];
        for (auto &v : t.data) v /= n;
    }

    /// Singular-value spectrum of the bond between sites k and k+1.
    rvec bond_spectrum(int k) {
        require(k >= 0 && k + 1 < nsite(), "bond_spectrum: bond out of range");
        move_center(k);
        // one extra split of the center tensor exposes the spectrum
        const SiteTensor &t = sites_[k];
        cmat m(t.left * t.phys, t.right);
        for (int a = 0; a < t.left; ++a)
            for (int s = 0; s < t.phys; ++s)
                for (int b = 0; b < t.right; ++b) m(a * t.phys + s, b) = t.at(a, s, b);
        Eigen::BDCSVD<cmat> svd(m);
        return svd.singularValues();
    }

    /// Von Neumann entanglement entropy at a bond (natural log).
    double entanglement_entropy(int bond) {
        rvec sv = bond_spectrum(bond);
        const double n2 = sv.squaredNorm();
        double ent = 0.0;
        for (int i = 0; i < sv.size(); ++i) {
            const double p = sv(i) * sv(i) / n2;
            if (p > 1e-300) ent -= p * std::log(p);
        }
        return ent;
    }

    void apply_1site(int k, const cmat &u) {
        require(k >= 0 && k < nsite(), "apply_1site: site out of range");
        require(u.rows() == phys_ && u.cols() == phys_, "apply_1site: matrix shape");
        SiteTensor &t = sites_[k];
        std::vector<cdouble> col(phys_);
        for (int a = 0; a < t.left; ++a)
            for (int b = 0; b < t.right; ++b) {
                for (int s = 0; s < phys_; ++s) col[s] = t.at(a, s, b);
                for (int s = 0; s < phys_; ++s) {
                    cdouble v(0, 0);
                    for (int s2 = 0; s2 < phys_; ++s2) v += u(s, s2) * col[s2];
                    t.at(a, s, b) = v;
                }
            }
    }

    /// Two-site gate on adjacent sites (k, k+1); u indexes the left site as
    /// the most significant physical index. Merge, apply, SVD split,
    /// truncate to chi_max (keeping zero singular values up to the cap).
    void apply_2site(int k, const cmat &u) {
        require(k >= 0 && k + 1 < nsite(), "apply_2site: site out of range");
        const int d = phys_;
        require(u.rows() == d * d && u.cols() == d * d, "apply_2site: matrix shape");
        move_center(k);
        const SiteTensor &l = sites_[k];
        const SiteTensor &r = sites_[k + 1];
        const int chi_l = l.left, chi_r = r.right;

        // theta[a, s1, s2, b]
        std::vector<cdouble> theta(static_cast<std::size_t>(chi_l) * d * d * chi_r, cdouble(0, 0));
        auto th = [&](int a, int s1, int s2, int b) -> cdouble & {
            return theta[((static_cast<std::size_t>(a) * d + s1) * d + s2) * chi_r + b];
        };
        for (int a = 0; a < chi_l; ++a)
            for (int s1 = 0; s1 < d; ++s1)
                for (int m = 0; m < l.right; ++m)
                    for (int s2 = 0; s2 < d; ++s2)
                        for (int b = 0; b < chi_r; ++b)
                            th(a, s1, s2, b) += l.at(a, s1, m) * r.at(m, s2, b);

        std::vector<cdouble> scratch(d * d);
        for (int a = 0; a < chi_l; ++a)
            for (int b = 0; b < chi_r; ++b) {
                for (int s1 = 0; s1 < d; ++s1)
                    for (int s2 = 0; s2 < d; ++s2) scratch[s1 * d + s2] = th(a, s1, s2, b);
                for (int s1 = 0; s1 < d; ++s1)
                    for (int s2 = 0; s2 < d; ++s2) {
                        cdouble v(0, 0);
                        for (int t2 = 0; t2 < d * d; ++t2)
                            v += u(s1 * d + s2, t2) * scratch[t2];
                        th(a, s1, s2, b) = v;
                    }
            }

        cmat m(chi_l * d, d * chi_r);
        for (int a = 0; a < chi_l; ++a)
            for (int s1 = 0; s1 < d; ++s1)
                for (int s2 = 0; s2 < d; ++s2)
                    for (int b = 0; b < chi_r; ++b)
                        m(a * d + s1, s2 * chi_r + b) = th(a, s1, s2, b);

        Eigen::BDCSVD<cmat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const long keep = std::min<long>(svd.singularValues().size(), chi_);
        double dropped = 0.0;
        for (long i = keep; i < svd.singularValues().size(); ++i)
            dropped += svd.singularValues()(i) * svd.singularValues()(i);
        trunc_err_ += dropped;

        SiteTensor nl = SiteTensor::zeros(chi_l, d, static_cast<int>(keep));
        for (int a = 0; a < chi_l; ++a)
            for (int s1 = 0; s1 < d; ++s1)
                for (long c = 0; c < keep; ++c) nl.at(a, s1, static_cast<int>(c)) = svd.matrixU()(a * d + s1, c);
        SiteTensor nr = SiteTensor::zeros(static_cast<int>(keep), d, chi_r);
        for (long c = 0; c < keep; ++c)
            for (int s2 = 0; s2 < d; ++s2)
                for (int b = 0; b < chi_r; ++b)
                    nr.at(static_cast<int>(c), s2, b) =
                        svd.singularValues()(c) * std::conj(svd.matrixV()(s2 * chi_r + b, c));
        sites_[k] = std::move(nl);
        sites_[k + 1] = std::move(nr);
        center_ = k + 1;
    }

    /// Moves the orthogonality center with norm-preserving SVD sweeps.
    void move_center(int to) {
        require(to >= 0 && to < nsite(), "move_center: out of range");
        while (center_ < to) shift_right();
        while (center_ > to) shift_left();
    }

    /// Raw tensor replacement (checkpoint loading); resets the center to 0.
    void overwrite_site(int k, SiteTensor t) {
        sites_.at(k) = std::move(t);
        center_ = 0;
    }
    void set_truncation_error(double e) { trunc_err_ = e; }

    /// Restores the mixed-canonical gauge after raw loads: a right sweep
    /// makes the left side left-orthonormal, the return sweep fixes the
    /// right side. The represented state is unchanged.
    void recanonicalize() {
        center_ = 0;
        move_center(nsite() - 1);
        move_center(0);
    }

    /// Left-canonical isometry defect of site k (0 when k < center).
    double left_isometry_defect(int k) const {
        const SiteTensor &t = sites_[k];
        cmat gram = cmat::Zero(t.right, t.right);
        for (int b1 = 0; b1 < t.right; ++b1)
            for (int b2 = 0; b2 < t.right; ++b2) {
                cdouble v(0, 0);
                for (int a = 0; a < t.left; ++a)
                    for (int s = 0; s < t.phys; ++s)
                        v += std::conj(t.at(a, s, b1)) * t.at(a, s, b2);
                gram(b1, b2) = v;
            }
        return (gram - cmat::Identity(t.right, t.right)).cwiseAbs().maxCoeff();
    }

  private:
    void shift_right() {
        SiteTensor &t = sites_[center_];
        cmat m(t.left * t.phys, t.right);
        for (int a = 0; a < t.left; ++a)
            for (int s = 0; s < t.phys; ++s)
                for (int b = 0; b < t.right; ++b) m(a * t.phys + s, b) = t.at(a, s, b);
        Eigen::BDCSVD<cmat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const long keep = svd.singularValues().size(); // no truncation on sweeps
        SiteTensor nt = SiteTensor::zeros(t.left, t.phys, static_cast<int>(keep));
        for (int a = 0; a < t.left; ++a)
            for (int s = 0; s < t.phys; ++s)
                for (long c = 0; c < keep; ++c)
                    nt.at(a, s, static_cast<int>(c)) = svd.matrixU()(a * t.phys + s, c);
        cmat carry = svd.singularValues().head(keep).asDiagonal() *
                     svd.matrixV().leftCols(keep).adjoint();
        sites_[center_] = std::move(nt);
        SiteTensor &r = sites_[center_ + 1];
        SiteTensor nr = SiteTensor::zeros(static_cast<int>(keep), r.phys, r.right);
        for (long c = 0; c < keep; ++c)
            for (int a = 0; a < r.left; ++a) {
                if (carry(c, a) == cdouble(0, 0)) continue;
                for (int s = 0; s < r.phys; ++s)
                    for (int b = 0; b < r.right; ++b)
                        nr.at(static_cast<int>(c), s, b) += carry(c, a) * r.at(a, s, b);
            }
        sites_[center_ + 1] = std::move(nr);
        ++center_;
    }

    void shift_left() {
        SiteTensor &t = sites_[center_];
        cmat m(t.left, t.phys * t.right);
        for (int a = 0; a < t.left; ++a)
            for (int s = 0; s < t.phys; ++s)
                for (int b = 0; b < t.right; ++b) m(a, s * t.right + b) = t.at(a, s, b);
        Eigen::BDCSVD<cmat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const long keep = svd.singularValues().size();
        SiteTensor nt = SiteTensor::zeros(static_cast<int>(keep), t.phys, t.right);
        for (long c = 0; c < keep; ++c)
            for (int s = 0; s < t.phys; ++s)
                for (int b = 0; b < t.right; ++b)
                    nt.at(static_cast<int>(c), s, b) = std::conj(svd.matrixV()(s * t.right + b, c));
        cmat carry = svd.matrixU().leftCols(keep) *
                     svd.singularValues().head(keep).asDiagonal();
        sites_[center_] = std::move(nt);
        SiteTensor &l = sites_[center_ - 1];
        SiteTensor nl = SiteTensor::zeros(l.left, l.phys, static_cast<int>(keep));
        for (int a = 0; a < l.left; ++a)
            for (int s = 0; s < l.phys; ++s)
                for (long c = 0; c < keep; ++c) {
                    cdouble v(0, 0);
                    for (int b = 0; b < l.right; ++b) v += l.at(a, s, b) * carry(b, c);
                    nl.at(a, s, static_cast<int>(c)) = v;
                }
        sites_[center_ - 1] = std::move(nl);
        --center_;
    }

    int phys_ = 2;
    int chi_ = 64;
    int center_ = 0;
    double trunc_err_ = 0.0;
    std::vector<SiteTensor> sites_;
};

} // namespace quasar::mps
