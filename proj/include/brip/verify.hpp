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

#ifndef BRIP_VERIFY_HPP
#define BRIP_VERIFY_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "brip/jacobi.hpp"
#include "brip/kwise.hpp"
#include "brip/ripmatrix.hpp"

// End-to-end verification: exact isometry constants over all k-subsets,
// Johnson-Lindenstrauss tail estimates, an orthogonal-matching-pursuit
// recovery demo, and the randomness budget accounting.

namespace brip::verify {

/// Extreme eigenvalues of a dense symmetric matrix (n <= 64), via cyclic
/// Jacobi rotations.
inline std::pair<double, double> extreme_eigs(const Eigen::MatrixXd& g) {
  return jacobi::extreme_eigs(g);
}

struct RipReport {
  int n_cols = 0;
  int k = 0;
  int q_rows = 0;
  double delta_k = 0.0;
  std::vector<int> argmax_subset;  // 0-based column indices
  long long subsets_examined = 0;
  double wall_time_s = 0.0;
  std::vector<double> per_subset;  // filled only on request (lex rank order)
};

/// Exact isometry constant: max over all k-subsets T of
/// max(1 - lambda_min, lambda_max - 1) of the Gram of the chosen columns.
/// Guard: C(N, k) <= 10^7; a tie on the max resolves to the earliest subset
/// in lexicographic order, so any worker count reports the same subset.
RipReport rip_constant_exact(const Eigen::MatrixXd& phi, int k,
                             bool collect_per_subset = false);
RipReport rip_constant_exact(const ripmatrix::RipMatrix& phi, int k,
                             bool collect_per_subset = false);

/// C(n, k) saturating at cap+1; helpers for the subset enumeration.
long long binomial_capped(int n, int k, long long cap);
std::vector<int> unrank_combination(int n, int k, long long rank);
bool next_combination(std::vector<int>& subset, int n);

enum class MatrixSource {
  direct,       // powering generator over all Q*N bits
  composed,     // BCH-composed generator
  independent,  // counter-rng signs; harness baseline, outside the budget
};

struct JlPoint {
  int q_rows = 0;
  int ell = 0;
  int log2_inv_eps = 0;
  long long trials = 0;
  long long failures = 0;
  double rate = 0.0;
};

struct JlReport {
  int n_cols = 0;
  int k = 0;
  double eta = 0.0;
  MatrixSource source = MatrixSource::composed;
  ripmatrix::SparseVector x;
  long long trials_per_q = 0;
  long long failure_count = 0;  // across the whole sweep
  double failure_rate = 0.0;
  std::vector<JlPoint> sweep;
  double c_hat = 0.0;  // NaN when fewer than two Q values had >= 5 failures
};

/// Samples `trials` matrices per Q with seeds derived from master_seed and
/// counts |  ||Phi x||_2^2 - 1 | >= eta. Per-Q parameters are re-chosen via
/// choose_params with the Q override. The exponent fit ln(rate) ~ -c*Q*eta^2
/// uses only Q values with at least 5 failures.
JlReport jl_tail(const ripmatrix::RipParams& params, MatrixSource source,
                 const ripmatrix::SparseVector& x, double eta, long long trials,
                 std::uint64_t master_seed, const std::vector<int>& q_sweep = {});

/// Standard orthogonal matching pursuit: k rounds of max-|correlation|
/// column selection and least-squares refit through the Jacobi spectral
/// solver. Throws degenerate_support_error when the selected Gram is
/// singular beyond tolerance.
ripmatrix::SparseVector omp_recover(const Eigen::MatrixXd& phi, const Eigen::VectorXd& y, int k);
ripmatrix::SparseVector omp_recover(const ripmatrix::RipMatrix& phi, const Eigen::VectorXd& y, int k);

struct BudgetReport {
  ripmatrix::RipParams params;
  kwise::Mode mode = kwise::Mode::composed;
  long long seed_bits = 0;
  long long naive_bits = 0;  // N * Q, one bit per independent sign entry
  double ratio = 0.0;        // seed_bits / (k * log2(N/k) * log2(k))
};

/// Pure arithmetic; valid far beyond constructible sizes.
BudgetReport randomness_budget(const ripmatrix::RipParams& params, kwise::Mode mode);

/// Dense +-1/sqrt(Q) matrix with independent counter-rng signs. Harness
/// baseline only: its N*Q random bits are deliberately outside the seed
/// accounting.
Eigen::MatrixXd sample_dense_sign_matrix(int q_rows, int n_cols, std::uint64_t key);

}  // namespace brip::verify

#endif  // BRIP_VERIFY_HPP
