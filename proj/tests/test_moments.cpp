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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "brip/common.hpp"
#include "brip/moments.hpp"
#include "brip/rng.hpp"

namespace mo = brip::moments;
namespace sb = brip::smallbias;
namespace kw = brip::kwise;
using brip::BitVector;

namespace {

Eigen::MatrixXd random_symmetric(int n, brip::rng::Counter& stream) {
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double g = stream.next_normal();
      b(i, j) = g;
      b(j, i) = g;
    }
  }
  return b;
}

// Independent oracle: direct enumeration of all 2^n sign vectors, no Gray
// walk, plain summation in index order.
double brute_moment_uniform(const Eigen::MatrixXd& b, int ell) {
  const int n = static_cast<int>(b.rows());
  const double tr = b.trace();
  long double total = 0.0L;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    Eigen::VectorXd z(n);
    for (int j = 0; j < n; ++j) z(j) = (mask >> j) & 1 ? -1.0 : 1.0;
    const double q = z.dot(b * z) - tr;
    long double p = 1.0L;
    for (int e = 0; e < ell; ++e) p *= q;
    total += p;
  }
  return static_cast<double>(total / static_cast<long double>(1ull << n));
}

}  // namespace

TEST_CASE("symmetrization mirrors the average exactly") {
  Eigen::MatrixXd raw(2, 2);
  raw << 1.0, 3.0, 5.0, 2.0;
  const mo::SymmetricMatrix b(raw);
  CHECK(b.mat()(0, 1) == 4.0);
  CHECK(b.mat()(1, 0) == 4.0);
  CHECK(b.mat()(0, 0) == 1.0);
}

TEST_CASE("exact uniform moment: frozen values") {
  const mo::SymmetricMatrix eye(Eigen::MatrixXd::Identity(5, 5));
  CHECK(mo::exact_moment_uniform(eye, 2) == 0.0);
  CHECK(mo::exact_moment_uniform(eye, 8) == 0.0);

  Eigen::MatrixXd swap(2, 2);
  swap << 0.0, 1.0, 1.0, 0.0;
  const mo::SymmetricMatrix b(swap);
  CHECK(mo::exact_moment_uniform(b, 2) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(mo::exact_moment_uniform(b, 4) == doctest::Approx(16.0).epsilon(1e-14));

  const mo::SymmetricMatrix diag(Eigen::Vector3d(1.0, -2.0, 0.5).asDiagonal().toDenseMatrix());
  CHECK(mo::exact_moment_uniform(diag, 2) == 0.0);
}

TEST_CASE("exact uniform moment matches the direct-enumeration oracle") {
  brip::rng::Counter stream(0x3108a011);
  for (int n : {3, 6, 9}) {
    for (int ell : {2, 4, 8}) {
      const mo::SymmetricMatrix b(random_symmetric(n, stream));
      const double fast = mo::exact_moment_uniform(b, ell);
      const double slow = brute_moment_uniform(b.mat(), ell);
      CHECK(fast == doctest::Approx(slow).epsilon(1e-11));
    }
  }
}

TEST_CASE("ell=2 closed form: 4 * sum of squared strict-upper entries") {
  brip::rng::Counter stream(0x3108a012);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 2 + static_cast<int>(stream.next_below(9));
    const mo::SymmetricMatrix b(random_symmetric(n, stream));
    double closed = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) closed += 4.0 * b.mat()(i, j) * b.mat()(i, j);
    }
    CHECK(mo::exact_moment_uniform(b, 2) == doctest::Approx(closed).epsilon(1e-9));
  }
}

TEST_CASE("guards: dimension cap and moment order") {
  const mo::SymmetricMatrix b(Eigen::MatrixXd::Identity(23, 23));
  CHECK_THROWS_AS(mo::exact_moment_uniform(b, 2), brip::capacity_error);
  const mo::SymmetricMatrix small(Eigen::MatrixXd::Identity(3, 3));
  CHECK_THROWS_AS(mo::exact_moment_uniform(small, 3), std::invalid_argument);
  CHECK_THROWS_AS(mo::exact_moment_uniform(small, 32), std::invalid_argument);
}

TEST_CASE("worker counts agree to 1e-9 relative") {
  brip::rng::Counter stream(0x3108a013);
  const mo::SymmetricMatrix b(random_symmetric(12, stream));
  brip::set_max_threads(1);
  const double one = mo::exact_moment_uniform(b, 8);
  brip::set_max_threads(5);
  const double five = mo::exact_moment_uniform(b, 8);
  brip::set_max_threads(0);
  CHECK(one == doctest::Approx(five).epsilon(1e-9));
}

TEST_CASE("sample-space moment over the uniform stub equals the cube moment") {
  brip::rng::Counter stream(0x3108a014);
  const mo::SymmetricMatrix b(random_symmetric(8, stream));
  for (int ell : {2, 4}) {
    const double cube = mo::exact_moment_uniform(b, ell);
    const double space = mo::exact_moment_space(b, ell, sb::uniform_stub(8));
    CHECK(space == doctest::Approx(cube).epsilon(1e-9));
  }
}

TEST_CASE("diagonal B has zero moment over any generator") {
  const mo::SymmetricMatrix diag(
      Eigen::Vector4d(0.3, -1.0, 2.0, 0.0).asDiagonal().toDenseMatrix());
  const auto spec = sb::make_powering_spec_with_degree(4, 5);
  CHECK(mo::exact_moment_space(diag, 2, sb::view(spec)) == 0.0);
  CHECK(mo::exact_moment_space(diag, 4, sb::view(spec)) == 0.0);
}

TEST_CASE("biased-space moment respects the biased bound with C = 8") {
  brip::rng::Counter stream(0x3108a015);
  const auto spec = sb::make_powering_spec_with_degree(8, 6);
  const auto view = sb::view(spec);
  // powering guarantee: 8/64 = 2^-3
  for (int rep = 0; rep < 5; ++rep) {
    const mo::SymmetricMatrix b(random_symmetric(8, stream));
    for (int ell : {2, 4}) {
      const double moment = mo::exact_moment_space(b, ell, view);
      CHECK(moment <= mo::hwb_bound(b, ell, 8.0, 3.0));
    }
  }
}

TEST_CASE("global sign flip of the sample space leaves exact moments unchanged") {
  brip::rng::Counter stream(0x3108a016);
  const mo::SymmetricMatrix b(random_symmetric(6, stream));
  const auto spec = sb::make_powering_spec_with_degree(6, 5);
  auto flipped = sb::view(spec);
  const auto base_emit = flipped.emit;
  flipped.emit = [base_emit](const BitVector& seed) {
    BitVector bits = base_emit(seed);
    for (std::size_t i = 0; i < bits.size(); ++i) bits.set(i, !bits.get(i));
    return bits;
  };
  for (int ell : {2, 4}) {
    CHECK(mo::exact_moment_space(b, ell, sb::view(spec)) ==
          mo::exact_moment_space(b, ell, flipped));
  }
}

TEST_CASE("space moment guards") {
  const mo::SymmetricMatrix b(Eigen::MatrixXd::Identity(4, 4));
  CHECK_THROWS_AS(mo::exact_moment_space(b, 2, sb::uniform_stub(5)), std::invalid_argument);
  const auto big = sb::make_powering_spec_with_degree(8, 14);  // 28 seed bits
  CHECK_THROWS_AS(
      mo::exact_moment_space(mo::SymmetricMatrix(Eigen::MatrixXd::Identity(8, 8)), 2,
                             sb::view(big)),
      brip::capacity_error);
}

TEST_CASE("monte carlo: diagonal B is exactly zero with zero width") {
  const mo::SymmetricMatrix diag(
      Eigen::Vector4d(1.0, 2.0, -3.0, 0.5).asDiagonal().toDenseMatrix());
  const auto spec = sb::make_powering_spec_with_degree(4, 5);
  const auto mc = mo::mc_moment(diag, 2, sb::view(spec), 200, 42);
  CHECK(mc.value == 0.0);
  CHECK(mc.half_width_95 == 0.0);
}

TEST_CASE("monte carlo agrees with the exact space moment within 3 half-widths") {
  brip::rng::Counter stream(0x3108a017);
  const mo::SymmetricMatrix b(random_symmetric(8, stream));
  const auto spec = sb::make_powering_spec_with_degree(8, 5);
  const double exact = mo::exact_moment_space(b, 2, sb::view(spec));
  const auto mc = mo::mc_moment(b, 2, sb::view(spec), 4000, 0xabcdef12);
  CHECK(std::abs(mc.value - exact) <= 3.0 * mc.half_width_95);
}

TEST_CASE("monte carlo half width shrinks like 1/sqrt(2) when trials double") {
  brip::rng::Counter stream(0x3108a018);
  const mo::SymmetricMatrix b(random_symmetric(8, stream));
  const auto view = sb::view(sb::make_powering_spec_with_degree(8, 6));
  const auto narrow = mo::mc_moment(b, 2, view, 16000, 7);
  const auto wide = mo::mc_moment(b, 2, view, 8000, 7);
  const double shrink = narrow.half_width_95 / wide.half_width_95;
  CHECK(shrink == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.2));
  CHECK_THROWS_AS(mo::mc_moment(b, 2, view, 50, 7), std::invalid_argument);
}

TEST_CASE("hw_bound: frozen value, zero matrix, homogeneity") {
  Eigen::MatrixXd swap(2, 2);
  swap << 0.0, 1.0, 1.0, 0.0;
  const mo::SymmetricMatrix b(swap);
  CHECK(mo::hw_bound(b, 2, 1.0) == doctest::Approx(4.0).epsilon(1e-12));

  const mo::SymmetricMatrix zero(Eigen::MatrixXd::Zero(3, 3));
  CHECK(mo::hw_bound(zero, 4, 8.0) == 0.0);

  brip::rng::Counter stream(0x3108a019);
  const Eigen::MatrixXd base = random_symmetric(5, stream);
  const mo::SymmetricMatrix b1(base);
  const mo::SymmetricMatrix b3(3.0 * base);
  for (int ell : {2, 4}) {
    CHECK(mo::hw_bound(b3, ell, 8.0) ==
          doctest::Approx(std::pow(3.0, ell) * mo::hw_bound(b1, ell, 8.0)).epsilon(1e-10));
  }
}

TEST_CASE("hwb_bound: frozen value and the vanishing-eps limit") {
  Eigen::MatrixXd swap(2, 2);
  swap << 0.0, 1.0, 1.0, 0.0;
  const mo::SymmetricMatrix b(swap);
  // eps = 1/4: (1/4) * l1^2 + hw = (1/4)*4 + 4 = 5
  CHECK(mo::hwb_bound(b, 2, 1.0, 2.0) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(mo::hwb_bound(b, 2, 1.0, 5000.0) == doctest::Approx(mo::hw_bound(b, 2, 1.0)));
  const mo::SymmetricMatrix zero(Eigen::MatrixXd::Zero(2, 2));
  CHECK(mo::hwb_bound(zero, 2, 1.0, 2.0) == 0.0);
}

TEST_CASE("min_constant: frozen value and degenerate cases") {
  Eigen::MatrixXd swap(2, 2);
  swap << 0.0, 1.0, 1.0, 0.0;
  const mo::SymmetricMatrix b(swap);
  CHECK(mo::min_constant(b, 2, 4.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mo::min_constant(b, 2, 0.0) == 0.0);
  const mo::SymmetricMatrix zero(Eigen::MatrixXd::Zero(2, 2));
  CHECK(mo::min_constant(zero, 2, 0.0) == 0.0);
}

TEST_CASE("min_constant stays below 8 on random exhaustive instances") {
  brip::rng::Counter stream(0x3108a01a);
  for (int rep = 0; rep < 10; ++rep) {
    const mo::SymmetricMatrix b(random_symmetric(10, stream));
    for (int ell : {2, 4, 8}) {
      const double moment = mo::exact_moment_uniform(b, ell);
      CHECK(mo::min_constant(b, ell, moment) <= 8.0);
    }
  }
}

TEST_CASE("matrix_norms: frozen values") {
  const auto eye = mo::matrix_norms(mo::SymmetricMatrix(Eigen::MatrixXd::Identity(3, 3)));
  CHECK(eye.l1 == doctest::Approx(3.0));
  CHECK(eye.s2 == doctest::Approx(std::sqrt(3.0)));
  CHECK(eye.op == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(eye.trace == doctest::Approx(3.0));

  Eigen::MatrixXd swap(2, 2);
  swap << 0.0, 1.0, 1.0, 0.0;
  const auto sw = mo::matrix_norms(mo::SymmetricMatrix(swap));
  CHECK(sw.l1 == doctest::Approx(2.0));
  CHECK(sw.s2 == doctest::Approx(std::sqrt(2.0)));
  CHECK(sw.op == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sw.trace == doctest::Approx(0.0));

  brip::rng::Counter stream(0x3108a01b);
  Eigen::VectorXd x(6);
  for (int i = 0; i < 6; ++i) x(i) = stream.next_normal();
  x.normalize();
  const auto rank1 = mo::matrix_norms(mo::SymmetricMatrix(x * x.transpose()));
  CHECK(rank1.op == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rank1.s2 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rank1.trace == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("uniform moments beat hw_bound with C = 8 on random matrices") {
  brip::rng::Counter stream(0x3108a01c);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + static_cast<int>(stream.next_below(9));
    const mo::SymmetricMatrix b(random_symmetric(n, stream));
    for (int ell : {2, 4, 8}) {
      CHECK(mo::exact_moment_uniform(b, ell) <= mo::hw_bound(b, ell, 8.0));
    }
  }
}
