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

#include "brip/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "brip/common.hpp"

namespace brip::jacobi {

namespace {

constexpr int kMaxDim = 64;
constexpr int kMaxSweeps = 64;
constexpr double kOffTolerance = 1e-12;

void check_input(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("jacobi: matrix must be square");
  if (!a.allFinite()) throw std::invalid_argument("jacobi: matrix has non-finite entries");
  if (a.rows() > kMaxDim) {
    throw capacity_error("jacobi: dimension exceeds the dense cap of 64");
  }
}

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double s = 0.0;
  for (Eigen::Index p = 0; p < a.rows(); ++p) {
    for (Eigen::Index q = 0; q < a.cols(); ++q) {
      if (p != q) s += a(p, q) * a(p, q);
    }
  }
  return std::sqrt(s);
}

// Diagonalizes in place; returns the rotation product when vectors != nullptr.
void diagonalize(Eigen::MatrixXd& a, Eigen::MatrixXd* vectors) {
  const Eigen::Index n = a.rows();
  if (vectors != nullptr) *vectors = Eigen::MatrixXd::Identity(n, n);
  const double target = kOffTolerance * a.norm();  // Frobenius, rotation invariant

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= target) return;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                    : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        if (vectors != nullptr) {
          for (Eigen::Index k = 0; k < n; ++k) {
            const double vkp = (*vectors)(k, p);
            const double vkq = (*vectors)(k, q);
            (*vectors)(k, p) = c * vkp - s * vkq;
            (*vectors)(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }
  if (off_diagonal_norm(a) > target) {
    throw std::runtime_error("jacobi: rotations failed to converge");
  }
}

}  // namespace

EigenSystem eigensystem(const Eigen::MatrixXd& sym) {
  check_input(sym);
  const Eigen::Index n = sym.rows();
  Eigen::MatrixXd a = 0.5 * (sym + sym.transpose());
  Eigen::MatrixXd v;
  diagonalize(a, &v);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&a](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });

  EigenSystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values(j) = a(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(j)]);
    out.vectors.col(j) = v.col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

std::pair<double, double> extreme_eigs(const Eigen::MatrixXd& sym) {
  check_input(sym);
  Eigen::MatrixXd a = 0.5 * (sym + sym.transpose());
  diagonalize(a, nullptr);
  double lo = a(0, 0);
  double hi = a(0, 0);
  for (Eigen::Index i = 1; i < a.rows(); ++i) {
    lo = std::min(lo, a(i, i));
    hi = std::max(hi, a(i, i));
  }
  return {lo, hi};
}

Eigen::VectorXd spectral_solve(const Eigen::MatrixXd& sym, const Eigen::VectorXd& rhs,
                               double tol_rel) {
  if (rhs.size() != sym.rows()) {
    throw std::invalid_argument("spectral_solve: rhs dimension mismatch");
  }
  const EigenSystem es = eigensystem(sym);
  const double max_abs = std::max(std::abs(es.values(0)),
                                  std::abs(es.values(es.values.size() - 1)));
  Eigen::VectorXd coeffs = es.vectors.transpose() * rhs;
  for (Eigen::Index j = 0; j < es.values.size(); ++j) {
    if (std::abs(es.values(j)) <= tol_rel * max_abs || max_abs == 0.0) {
      throw degenerate_support_error(
          "spectral_solve: eigenvalue below factorization tolerance");
    }
    coeffs(j) /= es.values(j);
  }
  return es.vectors * coeffs;
}

}  // namespace brip::jacobi
