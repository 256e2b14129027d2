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

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace quasar {

using cdouble = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rmat = Eigen::MatrixXd;
using rvec = Eigen::VectorXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Input violates an operation's precondition (shape, range, schema).
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A numerical guard tripped (explosion bound, zero-probability branch, ...).
struct guard_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Failure in the distributed transport layer.
struct transport_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string &msg) {
    if (!cond) throw invalid_input(msg);
}

inline bool approx_unitary(const cmat &u, double tol = 1e-8) {
    if (u.rows() != u.cols()) return false;
    cmat delta = u.adjoint() * u - cmat::Identity(u.rows(), u.cols());
    return delta.cwiseAbs().maxCoeff() < tol;
}

inline bool approx_symmetric(const cmat &a, double tol = 1e-10) {
    if (a.rows() != a.cols()) return false;
    return (a - a.transpose()).cwiseAbs().maxCoeff() < tol;
}

/// n! as a double; exact up to n = 170.
inline double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

} // namespace quasar
