// Copyright 2026 The brip Authors.
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

#ifndef BRIP_JACOBI_HPP
#define BRIP_JACOBI_HPP

#include <Eigen/Dense>
#include <utility>

// Dense symmetric eigensolver via cyclic Jacobi rotations, iterated until
// the off-diagonal Frobenius norm drops below 1e-12 times the matrix
// Frobenius norm. Intended for the small Gram matrices of the RIP
// verifier (n <= 64).

namespace brip::jacobi {

struct EigenSystem {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column j pairs with values(j)
};

/// Full spectrum with eigenvectors. Throws std::invalid_argument on
/// non-square or non-finite input, capacity_error for n > 64.
EigenSystem eigensystem(const Eigen::MatrixXd& sym);

/// (lambda_min, lambda_max) without accumulating eigenvectors.
std::pair<double, double> extreme_eigs(const Eigen::MatrixXd& sym);

/// Solves sym * out = rhs through the spectral decomposition; eigenvalues
/// with |lambda| <= tol_rel * max|lambda| trip degenerate_support_error.
Eigen::VectorXd spectral_solve(const Eigen::MatrixXd& sym, const Eigen::VectorXd& rhs,
                               double tol_rel = 1e-12);

}  // namespace brip::jacobi

#endif  // BRIP_JACOBI_HPP
