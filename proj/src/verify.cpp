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

#include "brip/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "brip/common.hpp"
#include "brip/rng.hpp"

namespace brip::verify {

long long binomial_capped(int n, int k, long long cap) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 value = 1;
  for (int j = 1; j <= k; ++j) {
    // Exact at each step: C(n-k+j, j) = C(n-k+j-1, j-1) * (n-k+j) / j.
    value = value * static_cast<unsigned>(n - k + j) / static_cast<unsigned>(j);
    if (value > static_cast<unsigned __int128>(cap)) return cap + 1;
  }
  return static_cast<long long>(value);
}

std::vector<int> unrank_combination(int n, int k, long long rank) {
  std::vector<int> subset;
  subset.reserve(static_cast<std::size_t>(k));
  int v = 0;
  for (int i = 0; i < k; ++i) {
    while (true) {
      const long long below = binomial_capped(n - v - 1, k - i - 1,
                                              std::numeric_limits<long long>::max() / 2);
      if (rank < below) break;
      rank -= below;
      ++v;
    }
    subset.push_back(v);
    ++v;
  }
  return subset;
}

bool next_combination(std::vector<int>& subset, int n) {
  const int k = static_cast<int>(subset.size());
  int i = k - 1;
  while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++subset[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) {
    subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
  }
  return true;
}

RipReport rip_constant_exact(const Eigen::MatrixXd& phi, int k, bool collect_per_subset) {
  const int n = static_cast<int>(phi.cols());
  if (k < 1 || k > n) throw std::invalid_argument("rip_constant_exact: need 1 <= k <= N");
  if (!phi.allFinite()) throw std::invalid_argument("rip_constant_exact: non-finite matrix");
  constexpr long long kCap = 10'000'000;
  const long long subsets = binomial_capped(n, k, kCap);
  if (subsets > kCap) {
    throw capacity_error("rip_constant_exact: C(N,k) exceeds 10^7 subsets; "
                         "subsample subsets instead of exact enumeration");
  }

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> per_subset;
  if (collect_per_subset) per_subset.assign(static_cast<std::size_t>(subsets), 0.0);

  struct Best {
    double delta = -1.0;
    long long rank = 0;
  };
  const auto partials = parallel_map_ranges<Best>(
      subsets, [&](std::int64_t begin, std::int64_t end) {
        std::vector<int> subset = unrank_combination(n, k, begin);
        Eigen::MatrixXd cols(phi.rows(), k);
        Eigen::MatrixXd gram(k, k);
        Best best;
        for (std::int64_t rank = begin; rank < end; ++rank) {
          for (int j = 0; j < k; ++j) cols.col(j) = phi.col(subset[static_cast<std::size_t>(j)]);
          gram.noalias() = cols.transpose() * cols;
          const auto [lo, hi] = jacobi::extreme_eigs(gram);
          const double delta = std::max(1.0 - lo, hi - 1.0);
          if (collect_per_subset) per_subset[static_cast<std::size_t>(rank)] = delta;
          if (delta > best.delta) {
            best.delta = delta;
            best.rank = rank;
          }
          if (rank + 1 < end) next_combination(subset, n);
        }
        return best;
      });

  Best best;
  for (const auto& part : partials) {
    if (part.delta > best.delta || (part.delta == best.delta && part.rank < best.rank)) {
      best = part;
    }
  }

  RipReport report;
  report.n_cols = n;
  report.k = k;
  report.q_rows = static_cast<int>(phi.rows());
  report.delta_k = best.delta;
  report.argmax_subset = unrank_combination(n, k, best.rank);
  report.subsets_examined = subsets;
  report.per_subset = std::move(per_subset);
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

RipReport rip_constant_exact(const ripmatrix::RipMatrix& phi, int k, bool collect_per_subset) {
  return rip_constant_exact(phi.to_dense(), k, collect_per_subset);
}

namespace {

double squared_image_norm(const kwise::SignVector& z, const ripmatrix::SparseVector& x,
                          int q_rows) {
  return ripmatrix::quadratic_form(z, x, q_rows);
}

}  // namespace

JlReport jl_tail(const ripmatrix::RipParams& params, MatrixSource source,
                 const ripmatrix::SparseVector& x, double eta, long long trials,
                 std::uint64_t master_seed, const std::vector<int>& q_sweep) {
  if (trials < 100) throw std::invalid_argument("jl_tail: need trials >= 100");
  if (!(eta > 0.0)) throw std::invalid_argument("jl_tail: need eta > 0");
  if (x.dim != params.n_cols) {
    throw std::invalid_argument("jl_tail: x dimension does not match params N");
  }
  x.require_unit();

  std::vector<int> qs = q_sweep;
  if (qs.empty()) qs.push_back(params.q_rows);

  JlReport report;
  report.n_cols = params.n_cols;
  report.k = params.k;
  report.eta = eta;
  report.source = source;
  report.x = x;
  report.trials_per_q = trials;

  for (std::size_t qi = 0; qi < qs.size(); ++qi) {
    ripmatrix::Overrides ov;
    ov.q_rows = qs[qi];
    ov.consts = params.consts;
    const ripmatrix::RipParams pq =
        ripmatrix::choose_params(params.n_cols, params.k, params.eta, ov);

    const long long qn = static_cast<long long>(pq.q_rows) * pq.n_cols;
    std::optional<kwise::Generator> gen;
    int seed_bits = 0;
    if (source != MatrixSource::independent) {
      const auto mode =
          source == MatrixSource::direct ? kwise::Mode::direct : kwise::Mode::composed;
      gen.emplace(kwise::make_spec(mode, static_cast<int>(qn), 2 * pq.ell, pq.log2_inv_eps));
      seed_bits = gen->spec().seed_bits;
    }

    const std::uint64_t q_key = rng::derive_key(master_seed, static_cast<std::uint64_t>(qi));
    const auto counts = parallel_map_ranges<long long>(
        trials, [&](std::int64_t begin, std::int64_t end) {
          long long failures = 0;
          for (std::int64_t trial = begin; trial < end; ++trial) {
            rng::Counter stream(rng::derive_key(q_key, static_cast<std::uint64_t>(trial)));
            kwise::SignVector z;
            if (gen.has_value()) {
              z = gen->generate(stream.next_bits(static_cast<std::size_t>(seed_bits)));
            } else {
              z = kwise::SignVector(stream.next_bits(static_cast<std::size_t>(qn)));
            }
            const double v = squared_image_norm(z, x, pq.q_rows);
            if (std::abs(v - 1.0) >= eta) ++failures;
          }
          return failures;
        });

    JlPoint point;
    point.q_rows = pq.q_rows;
    point.ell = pq.ell;
    point.log2_inv_eps = pq.log2_inv_eps;
    point.trials = trials;
    for (long long c : counts) point.failures += c;
    point.rate = static_cast<double>(point.failures) / static_cast<double>(trials);
    report.sweep.push_back(point);
    report.failure_count += point.failures;
  }
  report.failure_rate = static_cast<double>(report.failure_count) /
                        (static_cast<double>(trials) * static_cast<double>(qs.size()));

  // Least-squares exponent fit over Q values with enough observed failures.
  std::vector<std::pair<double, double>> pts;
  for (const auto& point : report.sweep) {
    if (point.failures >= 5) {
      pts.emplace_back(point.q_rows * eta * eta, std::log(point.rate));
    }
  }
  if (pts.size() >= 2) {
    double mu = 0.0;
    double mv = 0.0;
    for (const auto& [u, v] : pts) {
      mu += u;
      mv += v;
    }
    mu /= static_cast<double>(pts.size());
    mv /= static_cast<double>(pts.size());
    double cov = 0.0;
    double var = 0.0;
    for (const auto& [u, v] : pts) {
      cov += (u - mu) * (v - mv);
      var += (u - mu) * (u - mu);
    }
    report.c_hat = var > 0.0 ? -cov / var : std::numeric_limits<double>::quiet_NaN();
  } else {
    report.c_hat = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

ripmatrix::SparseVector omp_recover(const Eigen::MatrixXd& phi, const Eigen::VectorXd& y,
                                    int k) {
  const int n = static_cast<int>(phi.cols());
  if (y.size() != phi.rows()) {
    throw std::invalid_argument("omp_recover: measurement length does not match rows");
  }
  if (k < 1 || k > n) throw std::invalid_argument("omp_recover: need 1 <= k <= N");

  std::vector<int> support;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  Eigen::VectorXd residual = y;
  Eigen::VectorXd coeffs;
  const double stop = 1e-13 * y.norm();

  for (int round = 0; round < k; ++round) {
    if (residual.norm() <= stop) break;
    const Eigen::VectorXd corr = phi.transpose() * residual;
    int pick = -1;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      const double a = std::abs(corr(i));
      if (a > best) {  // strict: ties resolve to the smallest index
        best = a;
        pick = i;
      }
    }
    if (pick < 0) break;
    used[static_cast<std::size_t>(pick)] = true;
    support.push_back(pick);

    const int s = static_cast<int>(support.size());
    Eigen::MatrixXd cols(phi.rows(), s);
    for (int j = 0; j < s; ++j) cols.col(j) = phi.col(support[static_cast<std::size_t>(j)]);
    const Eigen::MatrixXd gram = cols.transpose() * cols;
    coeffs = jacobi::spectral_solve(gram, cols.transpose() * y);
    residual = y - cols * coeffs;
  }

  std::vector<std::pair<int, double>> entries;
  entries.reserve(support.size());
  for (std::size_t j = 0; j < support.size(); ++j) {
    entries.emplace_back(support[j], coeffs(static_cast<Eigen::Index>(j)));
  }
  std::sort(entries.begin(), entries.end());
  return ripmatrix::SparseVector::make(n, std::move(entries));
}

ripmatrix::SparseVector omp_recover(const ripmatrix::RipMatrix& phi, const Eigen::VectorXd& y,
                                    int k) {
  return omp_recover(phi.to_dense(), y, k);
}

BudgetReport randomness_budget(const ripmatrix::RipParams& params, kwise::Mode mode) {
  BudgetReport report;
  report.params = params;
  report.mode = mode;
  const long long qn = static_cast<long long>(params.q_rows) * params.n_cols;
  report.seed_bits = kwise::seed_length_bits(qn, 2 * params.ell, params.log2_inv_eps, mode);
  report.naive_bits = qn;
  const double denom = params.k *
                       std::log2(static_cast<double>(params.n_cols) / params.k) *
                       std::log2(static_cast<double>(params.k));
  report.ratio = denom > 0.0 ? static_cast<double>(report.seed_bits) / denom
                             : std::numeric_limits<double>::quiet_NaN();
  return report;
}

Eigen::MatrixXd sample_dense_sign_matrix(int q_rows, int n_cols, std::uint64_t key) {
  if (q_rows < 1 || n_cols < 1) {
    throw std::invalid_argument("sample_dense_sign_matrix: dimensions must be >= 1");
  }
  rng::Counter stream(key);
  const double scale = 1.0 / std::sqrt(static_cast<double>(q_rows));
  Eigen::MatrixXd out(q_rows, n_cols);
  // Row-major fill, 64 signs per drawn word.
  std::uint64_t word = 0;
  int bits_left = 0;
  for (int q = 0; q < q_rows; ++q) {
    for (int i = 0; i < n_cols; ++i) {
      if (bits_left == 0) {
        word = stream.next_u64();
        bits_left = 64;
      }
      out(q, i) = (word & 1) ? -scale : scale;
      word >>= 1;
      --bits_left;
    }
  }
  return out;
}

}  // namespace brip::verify
