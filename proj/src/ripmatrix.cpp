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

#include "brip/ripmatrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "brip/common.hpp"

namespace brip::ripmatrix {

RipParams choose_params(int n_cols, int k, double eta, const Overrides& overrides) {
  if (k < 1 || k >= n_cols) {
    throw std::invalid_argument("choose_params: need 1 <= k < N");
  }
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument("choose_params: need 0 < eta < 1");
  }
  RipParams p;
  p.n_cols = n_cols;
  p.k = k;
  p.eta = eta;
  p.consts = overrides.consts;

  if (overrides.q_rows.has_value()) {
    p.q_rows = *overrides.q_rows;
    if (p.q_rows < 1) throw std::invalid_argument("choose_params: Q override must be >= 1");
  } else {
    const double q = p.consts.c_q / (eta * eta) * k *
                     std::log(static_cast<double>(n_cols) / k);
    p.q_rows = static_cast<int>(std::ceil(q));
    if (p.q_rows < 1) p.q_rows = 1;
  }

  if (overrides.ell.has_value()) {
    p.ell = *overrides.ell;
    if (p.ell < 2 || (p.ell & (p.ell - 1)) != 0) {
      throw std::invalid_argument("choose_params: ell override must be a power of 2 >= 2");
    }
  } else {
    const double target = std::max(2.0, p.consts.c_ell * p.q_rows * eta * eta);
    int ell = 2;
    while (static_cast<double>(ell) < target) ell *= 2;
    p.ell = ell;
  }
  if (p.q_rows < p.ell) {
    throw std::invalid_argument("choose_params: need Q >= ell (Q=" + std::to_string(p.q_rows) +
                                ", ell=" + std::to_string(p.ell) + ")");
  }

  const long double ratio = static_cast<long double>(k) * k * p.q_rows / p.ell;
  if (!(ratio > 1.0L)) {
    throw std::invalid_argument("choose_params: need k^2 Q > ell for a positive bias exponent");
  }
  p.log2_inv_eps =
      static_cast<int>(std::ceil(static_cast<long double>(p.ell) / 2 * std::log2(ratio)));
  return p;
}

SparseVector SparseVector::make(int dim, std::vector<std::pair<int, double>> entries) {
  if (dim < 1) throw std::invalid_argument("sparse vector: dim must be >= 1");
  int prev = -1;
  for (const auto& [idx, val] : entries) {
    if (idx <= prev) {
      throw std::invalid_argument("sparse vector: indices must be strictly increasing");
    }
    if (idx >= dim) throw std::invalid_argument("sparse vector: index out of range");
    prev = idx;
    (void)val;
  }
  SparseVector x;
  x.dim = dim;
  x.entries = std::move(entries);
  return x;
}

double SparseVector::norm2() const {
  double s = 0.0;
  for (const auto& [idx, val] : entries) s += val * val;
  return std::sqrt(s);
}

double SparseVector::norm1() const {
  double s = 0.0;
  for (const auto& [idx, val] : entries) s += std::abs(val);
  return s;
}

Eigen::VectorXd SparseVector::to_dense() const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  for (const auto& [idx, val] : entries) v(idx) = val;
  return v;
}

void SparseVector::require_unit() const {
  if (std::abs(norm2() - 1.0) > 1e-12) {
    throw std::invalid_argument("sparse vector: expected a unit vector");
  }
}

Eigen::VectorXd RipMatrix::column(int i) const {
  Eigen::VectorXd col(q_rows);
  for (int q = 0; q < q_rows; ++q) col(q) = entry(q, i);
  return col;
}

Eigen::MatrixXd RipMatrix::to_dense() const {
  Eigen::MatrixXd out(q_rows, n_cols);
  const double s = scale();
  for (int q = 0; q < q_rows; ++q) {
    for (int i = 0; i < n_cols; ++i) out(q, i) = sign(q, i) * s;
  }
  return out;
}

RipMatrix sample_matrix(const RipParams& params, kwise::Mode mode, const BitVector& seed) {
  const long long total = static_cast<long long>(params.q_rows) * params.n_cols;
  if (total > INT32_MAX) {
    throw capacity_error("sample_matrix: Q*N too large to materialize");
  }
  const kwise::GeneratorSpec spec =
      kwise::make_spec(mode, static_cast<int>(total), 2 * params.ell, params.log2_inv_eps);
  if (seed.size() != static_cast<std::size_t>(spec.seed_bits)) {
    throw std::invalid_argument("sample_matrix: seed must be exactly " +
                                std::to_string(spec.seed_bits) + " bits, got " +
                                std::to_string(seed.size()));
  }
  RipMatrix phi;
  phi.q_rows = params.q_rows;
  phi.n_cols = params.n_cols;
  phi.generator = spec;
  phi.seed = seed;
  phi.signs = kwise::generate(spec, seed);
  return phi;
}

Eigen::VectorXd apply(const RipMatrix& phi, const SparseVector& x) {
  if (x.dim != phi.n_cols) {
    throw std::invalid_argument("apply: vector dimension does not match matrix columns");
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(phi.q_rows);
  for (const auto& [idx, val] : x.entries) {
    for (int q = 0; q < phi.q_rows; ++q) y(q) += phi.sign(q, idx) * val;
  }
  return y * phi.scale();
}

double quadratic_form(const kwise::SignVector& z, const SparseVector& x, int q_rows) {
  if (q_rows < 1 || z.size() % static_cast<std::size_t>(q_rows) != 0) {
    throw std::invalid_argument("quadratic_form: sign length must be a multiple of Q");
  }
  const std::size_t n = z.size() / static_cast<std::size_t>(q_rows);
  if (static_cast<std::size_t>(x.dim) != n) {
    throw std::invalid_argument("quadratic_form: vector dimension does not match block size");
  }
  KahanSum acc;
  for (int q = 0; q < q_rows; ++q) {
    const std::size_t base = static_cast<std::size_t>(q) * n;
    double dot = 0.0;
    for (const auto& [idx, val] : x.entries) {
      dot += z.sign(base + static_cast<std::size_t>(idx)) * val;
    }
    acc.add(dot * dot);
  }
  return acc.value() / q_rows;
}

BlockNorms block_norms(const SparseVector& x, int q_rows) {
  if (q_rows < 1) throw std::invalid_argument("block_norms: Q must be >= 1");
  x.require_unit();
  const double sq = std::pow(x.norm2(), 2);
  const double l1 = std::pow(x.norm1(), 2);
  BlockNorms out;
  out.norms.trace = sq;
  out.norms.op = sq / q_rows;
  out.norms.s2 = sq / std::sqrt(static_cast<double>(q_rows));
  out.norms.l1 = l1;
  out.support_size = x.support_size();
  out.l1_cap = out.support_size * std::sqrt(static_cast<double>(q_rows)) * out.norms.s2;
  // Tolerates roundoff at the Cauchy-Schwarz equality case (uniform |x_i|).
  out.l1_within_cap = out.norms.l1 <= out.l1_cap * (1.0 + 1e-12);
  return out;
}

}  // namespace brip::ripmatrix
