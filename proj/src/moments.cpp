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

#include "brip/moments.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "brip/common.hpp"
#include "brip/jacobi.hpp"
#include "brip/rng.hpp"

namespace brip::moments {

namespace {

void check_ell(int ell) {
  if (ell != 2 && ell != 4 && ell != 8 && ell != 16) {
    throw std::invalid_argument("moment order ell must be one of {2, 4, 8, 16}");
  }
}

double pow_ell(double q, int ell) {
  double v = q * q;           // ell = 2
  if (ell >= 4) v *= v;
  if (ell >= 8) v *= v;
  if (ell >= 16) v *= v;
  return v;
}

// Signs from packed bits: bit b -> (-1)^b.
void signs_from_bits(const BitVector& bits, Eigen::VectorXd& z) {
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    z(i) = bits.get(static_cast<std::size_t>(i)) ? -1.0 : 1.0;
  }
}

}  // namespace

SymmetricMatrix::SymmetricMatrix(const Eigen::MatrixXd& any) {
  if (any.rows() != any.cols()) {
    throw std::invalid_argument("SymmetricMatrix: input must be square");
  }
  if (!any.allFinite()) {
    throw std::invalid_argument("SymmetricMatrix: input has non-finite entries");
  }
  mat_ = 0.5 * (any + any.transpose());
  for (Eigen::Index i = 0; i < mat_.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < mat_.cols(); ++j) mat_(j, i) = mat_(i, j);
  }
}

double exact_moment_uniform(const SymmetricMatrix& b, int ell) {
  check_ell(ell);
  const int n = b.n();
  if (n < 1) throw std::invalid_argument("exact_moment_uniform: empty matrix");
  if (n > 22) {
    throw capacity_error("exact_moment_uniform: 2^" + std::to_string(n) +
                         " sign vectors exceed the enumeration cap (n <= 22)");
  }
  const Eigen::MatrixXd& m = b.mat();
  const double tr = m.trace();
  const std::int64_t total = 1ll << n;
  constexpr std::int64_t kRefreshPeriod = 4096;  // bounds drift of the running sums

  const auto partials = parallel_map_ranges<KahanSum>(
      total, [&](std::int64_t begin, std::int64_t end) {
        Eigen::VectorXd z(n);
        const std::uint64_t start_gray =
            static_cast<std::uint64_t>(begin) ^ (static_cast<std::uint64_t>(begin) >> 1);
        for (int j = 0; j < n; ++j) z(j) = (start_gray >> j) & 1 ? -1.0 : 1.0;
        Eigen::VectorXd s = m * z;

        KahanSum acc;
        for (std::int64_t idx = begin; idx < end; ++idx) {
          const double q = z.dot(s) - tr;
          acc.add(pow_ell(q, ell));
          if (idx + 1 < end) {
            if ((idx + 1 - begin) % kRefreshPeriod == 0) {
              // Gray-code walk: re-materialize at the checkpoint state.
              const std::uint64_t g = static_cast<std::uint64_t>(idx + 1) ^
                                      (static_cast<std::uint64_t>(idx + 1) >> 1);
              for (int j = 0; j < n; ++j) z(j) = (g >> j) & 1 ? -1.0 : 1.0;
              s.noalias() = m * z;
            } else {
              const int flip = std::countr_zero(static_cast<std::uint64_t>(idx + 1));
              const double delta = -2.0 * z(flip);
              z(flip) += delta;
              s.noalias() += m.col(flip) * delta;
            }
          }
        }
        return acc;
      });

  KahanSum sum;
  for (const auto& part : partials) sum.add(part.value());
  return sum.value() / static_cast<double>(total);
}

double exact_moment_space(const SymmetricMatrix& b, int ell,
                          const smallbias::BitGeneratorView& gen) {
  check_ell(ell);
  if (gen.n_bits != b.n()) {
    throw std::invalid_argument("exact_moment_space: generator output length != matrix dim");
  }
  if (gen.seed_bits > 26) {
    throw capacity_error("exact_moment_space: seed space exceeds the 2^26 enumeration cap");
  }
  const Eigen::MatrixXd& m = b.mat();
  const double tr = m.trace();
  const int n = b.n();
  const std::int64_t seeds = 1ll << gen.seed_bits;

  const auto partials = parallel_map_ranges<KahanSum>(
      seeds, [&](std::int64_t begin, std::int64_t end) {
        Eigen::VectorXd z(n);
        Eigen::VectorXd mz(n);
        KahanSum acc;
        for (std::int64_t sv = begin; sv < end; ++sv) {
          BitVector seed(static_cast<std::size_t>(gen.seed_bits));
          for (int bit = 0; bit < gen.seed_bits; ++bit) {
            seed.set(static_cast<std::size_t>(bit), (static_cast<std::uint64_t>(sv) >> bit) & 1);
          }
          signs_from_bits(gen.emit(seed), z);
          mz.noalias() = m * z;
          acc.add(pow_ell(z.dot(mz) - tr, ell));
        }
        return acc;
      });

  KahanSum sum;
  for (const auto& part : partials) sum.add(part.value());
  return sum.value() / static_cast<double>(seeds);
}

McMoment mc_moment(const SymmetricMatrix& b, int ell, const smallbias::BitGeneratorView& gen,
                   long long trials, std::uint64_t master_seed) {
  check_ell(ell);
  if (trials < 100) throw std::invalid_argument("mc_moment: need trials >= 100");
  if (gen.n_bits != b.n()) {
    throw std::invalid_argument("mc_moment: generator output length != matrix dim");
  }
  const Eigen::MatrixXd& m = b.mat();
  const double tr = m.trace();
  const int n = b.n();
  const int seed_bits = gen.seed_bits;

  struct Partial {
    KahanSum sum;
    KahanSum sum_sq;
  };
  const auto partials = parallel_map_ranges<Partial>(
      trials, [&](std::int64_t begin, std::int64_t end) {
        Eigen::VectorXd z(n);
        Eigen::VectorXd mz(n);
        Partial part;
        for (std::int64_t trial = begin; trial < end; ++trial) {
          rng::Counter stream(rng::derive_key(master_seed, static_cast<std::uint64_t>(trial)));
          const BitVector seed = stream.next_bits(static_cast<std::size_t>(seed_bits));
          signs_from_bits(gen.emit(seed), z);
          mz.noalias() = m * z;
          const double v = pow_ell(z.dot(mz) - tr, ell);
          part.sum.add(v);
          part.sum_sq.add(v * v);
        }
        return part;
      });

  KahanSum sum;
  KahanSum sum_sq;
  for (const auto& part : partials) {
    sum.add(part.sum.value());
    sum_sq.add(part.sum_sq.value());
  }
  const double t = static_cast<double>(trials);
  const double mean = sum.value() / t;
  double variance = (sum_sq.value() - t * mean * mean) / (t - 1.0);
  if (variance < 0.0) variance = 0.0;  // roundoff on constant samples
  McMoment out;
  out.value = mean;
  out.half_width_95 = 1.96 * std::sqrt(variance / t);
  out.trials = trials;
  return out;
}

MatrixNorms matrix_norms(const SymmetricMatrix& b) {
  MatrixNorms norms;
  norms.l1 = b.mat().cwiseAbs().sum();
  norms.s2 = b.mat().norm();
  norms.trace = b.mat().trace();
  const auto [lo, hi] = jacobi::extreme_eigs(b.mat());
  norms.op = std::max(std::abs(lo), std::abs(hi));
  return norms;
}

double hw_bound(const SymmetricMatrix& b, int ell, double c) {
  check_ell(ell);
  if (!(c > 0.0)) throw std::invalid_argument("hw_bound: C must be positive");
  const MatrixNorms norms = matrix_norms(b);
  const double base =
      std::max(std::sqrt(static_cast<double>(ell)) * norms.s2, ell * norms.op);
  return std::pow(c * base, ell);
}

double hwb_bound(const SymmetricMatrix& b, int ell, double c, double log2_inv_eps) {
  check_ell(ell);
  const MatrixNorms norms = matrix_norms(b);
  double eps_term = 0.0;
  if (norms.l1 > 0.0) {
    eps_term = std::exp2(ell * std::log2(norms.l1) - log2_inv_eps);
  }
  return eps_term + hw_bound(b, ell, c);
}

double min_constant(const SymmetricMatrix& b, int ell, double moment_value) {
  check_ell(ell);
  if (moment_value < 0.0) throw std::invalid_argument("min_constant: moment must be >= 0");
  const MatrixNorms norms = matrix_norms(b);
  const double base =
      std::max(std::sqrt(static_cast<double>(ell)) * norms.s2, ell * norms.op);
  if (base == 0.0) return 0.0;
  return std::pow(moment_value, 1.0 / ell) / base;
}

}  // namespace brip::moments
