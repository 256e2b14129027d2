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

#include <functional>
#include <map>

#include "quasar/linalg/permanent.hpp"
#include "quasar/photonic/gates.hpp"

namespace quasar::photonic {

using Occupation = std::vector<int>;

inline int total_photons(const Occupation &occ) {
    int n = 0;
    for (int v : occ) n += v;
    return n;
}

inline std::string ket_string(const Occupation &occ) {
    std::string s = "|";
    for (int v : occ) s += std::to_string(v);
    return s + ">";
}

/// Number of occupations of n photons over N modes: C(n+N-1, n).
inline double occupation_count(int photons, int nmode) {
    double c = 1.0;
    for (int i = 1; i <= photons; ++i) c = c * (nmode - 1 + i) / i;
    return c;
}

/// All occupations with the given photon total, lexicographically descending
/// (first mode fullest first), matching the deterministic output ordering.
inline std::vector<Occupation> enumerate_occupations(int photons, int nmode) {
    std::vector<Occupation> out;
    Occupation cur(nmode, 0);
    std::function<void(int, int)> rec = [&](int mode, int left) {
        if (mode == nmode - 1) {
            cur[mode] = left;
            out.push_back(cur);
            return;
        }
        for (int k = left; k >= 0; --k) {
            cur[mode] = k;
            rec(mode + 1, left - k);
        }
    };
    if (nmode > 0) rec(0, photons);
    return out;
}

/// Transition amplitude <out| Phi(U) |in> for a photon-number-conserving
/// interferometer: Per(U_st) / sqrt(prod n_i! prod m_j!), where column j of
/// U is repeated in_j times and row i is repeated out_i times. A photon
/// number mismatch is a valid zero amplitude, flagged for the caller.
struct Amplitude {
    cdouble value{0.0, 0.0};
    bool photon_mismatch = false;
};

inline Amplitude fock_amplitude(const cmat &u, const Occupation &in, const Occupation &out) {
    const int m = static_cast<int>(u.rows());
    require(u.cols() == m, "fock_amplitude: unitary must be square");
    require(static_cast<int>(in.size()) == m && static_cast<int>(out.size()) == m,
            "fock_amplitude: occupation length mismatch");
    for (int v : in) require(v >= 0, "fock_amplitude: negative occupation");
    for (int v : out) require(v >= 0, "fock_amplitude: negative occupation");
    const int n = total_photons(in);
    if (n != total_photons(out)) return {cdouble(0.0, 0.0), true};
    if (n == 0) return {cdouble(1.0, 0.0), false};

    cmat sub(n, n);
    int r = 0;
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < out[i]; ++k) {
            int c = 0;
            for (int j = 0; j < m; ++j)
                for (int l = 0; l < in[j]; ++l) sub(r, c++) = u(i, j);
            ++r;
        }
    double denom = 1.0;
    for (int i = 0; i < m; ++i) denom *= factorial(in[i]) * factorial(out[i]);
    return {linalg::permanent(sub) / std::sqrt(denom), false};
}

/// Sparse Fock state over basis occupations.
struct FockBasisState {
    int nmode = 0;
    std::map<Occupation, cdouble> amplitudes;

    double norm2() const {
        double s = 0.0;
        for (const auto &[occ, a] : amplitudes) s += std::norm(a);
        return s;
    }
};

/// Output distribution of a basis-state input through an interferometer.
/// Guarded by the outcome-count explosion bound.
inline std::map<Occupation, double> fock_prob_distribution(const cmat &u, const Occupation &in,
                                                           double outcome_limit = 2e6) {
    const int m = static_cast<int>(u.rows());
    const int n = total_photons(in);
    if (occupation_count(n, m) > outcome_limit)
        throw guard_error("fock_prob_distribution: outcome count above limit");
    std::map<Occupation, double> dist;
    for (const auto &out : enumerate_occupations(n, m))
        dist[out] = std::norm(fock_amplitude(u, in, out).value);
    return dist;
}

/// Conditions a distribution on a predicate; returns the renormalized
/// conditional plus the success probability.
struct PostSelected {
    std::map<Occupation, double> dist;
    double success = 0.0;
};

inline PostSelected post_select(const std::map<Occupation, double> &dist,
                                const std::function<bool(const Occupation &)> &keep) {
    PostSelected out;
    for (const auto &[occ, p] : dist)
        if (keep(occ)) {
            out.dist[occ] = p;
            out.success += p;
        }
    if (out.success <= 0.0) throw guard_error("post_select: zero-probability condition");
    for (auto &[occ, p] : out.dist) p /= out.success;
    return out;
}

} // namespace quasar::photonic
