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

#ifndef BRIP_RIPMATRIX_HPP
#define BRIP_RIPMATRIX_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "brip/bitvec.hpp"
#include "brip/kwise.hpp"
#include "brip/norms.hpp"

// Parameter selection, sign-matrix sampling, and the block quadratic-form
// machinery. A sampled matrix is a Q x N array of entries +-1/sqrt(Q) whose
// row-major sign vector z comes from the biased generator; for a unit
// k-sparse x, z^T B_x z with B_x = blockdiag(x x^T / Q, Q blocks) equals
// ||Phi x||_2^2.

namespace brip::ripmatrix {

struct Constants {
  double c_q = 16.0;    // row-count multiplier
  double c_ell = 0.125; // moment-order multiplier
  double c_hw = 8.0;    // assertable Hanson-Wright constant
  double c_jl = std::numeric_limits<double>::quiet_NaN();  // fitted a posteriori, never sizes anything
};

struct RipParams {
  int n_cols = 0;
  int k = 0;
  double eta = 0.0;
  int q_rows = 0;
  int ell = 0;            // moment order, power of 2 >= 2
  int log2_inv_eps = 0;   // bias exponent: ceil((ell/2) * log2(k^2 Q / ell))
  Constants consts;
};

struct Overrides {
  std::optional<int> q_rows;
  std::optional<int> ell;
  Constants consts;
};

/// Q = ceil(c_q * eta^-2 * k * ln(N/k)) unless overridden; ell = smallest
/// power of 2 >= max(2, c_ell * Q * eta^2); bias exponent from the formula
/// above. Throws std::invalid_argument on k >= N, eta outside (0,1), or
/// parameter combinations violating Q >= ell or k^2 Q > ell.
RipParams choose_params(int n_cols, int k, double eta, const Overrides& overrides = {});

/// At most k nonzero coordinates, indices strictly increasing.
struct SparseVector {
  int dim = 0;
  std::vector<std::pair<int, double>> entries;

  static SparseVector make(int dim, std::vector<std::pair<int, double>> entries);

  double norm2() const;
  double norm1() const;
  int support_size() const { return static_cast<int>(entries.size()); }
  Eigen::VectorXd to_dense() const;

  /// Throws std::invalid_argument unless | ||x||_2 - 1 | <= 1e-12.
  void require_unit() const;
};

struct RipMatrix {
  int q_rows = 0;
  int n_cols = 0;
  kwise::SignVector signs;  // row-major, bit q*N+i is entry (q, i)
  kwise::GeneratorSpec generator;
  BitVector seed;

  double scale() const { return 1.0 / std::sqrt(static_cast<double>(q_rows)); }
  int sign(int q, int i) const {
    return signs.sign(static_cast<std::size_t>(q) * static_cast<std::size_t>(n_cols) +
                      static_cast<std::size_t>(i));
  }
  double entry(int q, int i) const { return sign(q, i) * scale(); }
  Eigen::VectorXd column(int i) const;
  Eigen::MatrixXd to_dense() const;
};

/// Draws the sign payload from a generator with n_bits = Q*N and
/// parity_limit = 2*ell (the moment bound needs the 2*ell-wise guarantee).
/// The seed must be exactly the generator's seed length.
RipMatrix sample_matrix(const RipParams& params, kwise::Mode mode, const BitVector& seed);

/// y = Phi x exploiting sparsity; O(Q * support) work.
Eigen::VectorXd apply(const RipMatrix& phi, const SparseVector& x);

/// z^T B_x z without materializing B_x: sum over blocks of (z_b . x)^2 / Q.
double quadratic_form(const kwise::SignVector& z, const SparseVector& x, int q_rows);

struct BlockNorms {
  MatrixNorms norms;
  int support_size = 0;
  double l1_cap = 0.0;      // support * sqrt(Q) * s2, the sparsity certificate
  bool l1_within_cap = false;
};

/// Closed-form norms of B_x for unit x: trace = ||x||^2, op = ||x||^2/Q,
/// s2 = ||x||^2/sqrt(Q), l1 = ||x||_1^2, plus the certified inequality
/// l1 <= support * sqrt(Q) * s2.
BlockNorms block_norms(const SparseVector& x, int q_rows);

}  // namespace brip::ripmatrix

#endif  // BRIP_RIPMATRIX_HPP
