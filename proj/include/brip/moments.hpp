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

#ifndef BRIP_MOMENTS_HPP
#define BRIP_MOMENTS_HPP

#include <Eigen/Dense>
#include <cstdint>

#include "brip/kwise.hpp"
#include "brip/norms.hpp"
#include "brip/smallbias.hpp"

// Moments of the centered quadratic form z^T B z - tr(B): exact over the
// full sign cube, exact over a generator's sample space, or Monte Carlo.
// Bound evaluators cover the plain moment bound
//   C^ell * max(sqrt(ell)*||B||_S2, ell*||B||_2)^ell
// and its biased variant with the extra eps*||B||_L1^ell term.

namespace brip::moments {

/// Dense symmetric matrix; construction symmetrizes (B + B^T)/2 and mirrors
/// the upper triangle so B == B^T holds bit-exactly.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(const Eigen::MatrixXd& any);

  int n() const { return static_cast<int>(mat_.rows()); }
  const Eigen::MatrixXd& mat() const { return mat_; }

 private:
  Eigen::MatrixXd mat_;
};

/// Exact mean of (z^T B z - tr B)^ell over all 2^n sign vectors.
/// Guards: n <= 22; ell in {2, 4, 8, 16}. Compensated summation throughout;
/// different worker counts agree to ~1e-9 relative.
double exact_moment_uniform(const SymmetricMatrix& b, int ell);

/// Exact mean over a generator's seed space (all seeds equiprobable).
/// Guards: gen.seed_bits <= 26 and gen.n_bits == n.
double exact_moment_space(const SymmetricMatrix& b, int ell,
                          const smallbias::BitGeneratorView& gen);

struct McMoment {
  double value = 0.0;
  double half_width_95 = 0.0;  // normal-approximation confidence half width
  long long trials = 0;
};

/// Monte Carlo mean over `trials` seeds derived from master_seed by
/// counter-indexed 64-bit mixing; trials >= 100. Takes the same generator
/// view as the exact sum, but with no cap on the seed length.
McMoment mc_moment(const SymmetricMatrix& b, int ell, const smallbias::BitGeneratorView& gen,
                   long long trials, std::uint64_t master_seed);

/// l1, Frobenius, operator norm (via the Jacobi eigensolver), trace.
MatrixNorms matrix_norms(const SymmetricMatrix& b);

/// C^ell * max(sqrt(ell)*s2, ell*op)^ell.
double hw_bound(const SymmetricMatrix& b, int ell, double c);

/// eps*l1^ell + hw_bound, with the eps term evaluated in log2 space so
/// exponents in the hundreds cannot silently underflow the intermediate;
/// it returns +0 only when the true value is below the smallest subnormal.
double hwb_bound(const SymmetricMatrix& b, int ell, double c, double log2_inv_eps);

/// Smallest C with moment_value <= hw_bound(b, ell, C); 0 when the norm max
/// vanishes.
double min_constant(const SymmetricMatrix& b, int ell, double moment_value);

}  // namespace brip::moments

#endif  // BRIP_MOMENTS_HPP
