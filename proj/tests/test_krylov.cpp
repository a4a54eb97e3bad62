// Copyright 2026 kinksim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <complex>
#include <random>

#include <doctest.h>

#include "kinksim/errors.hpp"
#include "kinksim/krylov.hpp"

namespace kinksim {
namespace {

Eigen::MatrixXcd random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      a(i, j) = std::complex<double>(gauss(rng), gauss(rng));
  return 0.5 * (a + a.adjoint());
}

Eigen::VectorXcd random_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i)
    v[i] = std::complex<double>(gauss(rng), gauss(rng));
  return v / v.norm();
}

// Reference propagator by full diagonalization.
Eigen::VectorXcd dense_evolve(const Eigen::MatrixXcd& h,
                              const Eigen::VectorXcd& psi, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd coef = es.eigenvectors().adjoint() * psi;
  for (Eigen::Index k = 0; k < coef.size(); ++k)
    coef[k] *= std::exp(std::complex<double>(0.0, -es.eigenvalues()[k] * t));
  return es.eigenvectors() * coef;
}

HermitianApply matrix_apply(const Eigen::MatrixXcd& h) {
  return [&h](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) { y = h * x; };
}

}  // namespace

TEST_CASE("krylov evolution matches dense propagator on random problems") {
  std::mt19937_64 rng(20260301);
  std::uniform_real_distribution<double> tdist(0.1, 3.0);
  for (int draw = 0; draw < 10; ++draw) {
    const int dim = 64;
    Eigen::MatrixXcd h = random_hermitian(dim, rng);
    Eigen::VectorXcd psi = random_state(dim, rng);
    const double t = tdist(rng);
    Eigen::VectorXcd expected = dense_evolve(h, psi, t);

    Eigen::VectorXcd evolved = psi;
    KrylovStats stats = evolve_krylov(matrix_apply(h), evolved, t);
    CAPTURE(draw);
    CAPTURE(t);
    CAPTURE(stats.steps);
    CHECK((evolved - expected).norm() <= 1e-7);
    CHECK(stats.error_estimate <= 1e-8);
    CHECK(stats.matvecs >= stats.steps);
  }
}

TEST_CASE("krylov evolution preserves the norm over long times") {
  std::mt19937_64 rng(7);
  Eigen::MatrixXcd h = random_hermitian(32, rng);
  Eigen::VectorXcd psi = random_state(32, rng);
  evolve_krylov(matrix_apply(h), psi, 50.0);
  CHECK(std::abs(psi.norm() - 1.0) <= 1e-10);
}

TEST_CASE("happy breakdown on an eigenvector start is exact") {
  std::mt19937_64 rng(11);
  Eigen::MatrixXcd h = random_hermitian(16, rng);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const double lambda = es.eigenvalues()[3];
  Eigen::VectorXcd psi = es.eigenvectors().col(3);

  const double t = 1.7;
  Eigen::VectorXcd evolved = psi;
  KrylovStats stats = evolve_krylov(matrix_apply(h), evolved, t);
  CHECK(stats.error_estimate == 0.0);
  CHECK(stats.steps == 1);
  CHECK(stats.matvecs == 1);

  Eigen::VectorXcd expected =
      std::exp(std::complex<double>(0.0, -lambda * t)) * psi;
  CHECK((evolved - expected).norm() <= 1e-12);
}

TEST_CASE("breakdown after spanning the full space is exact at loose tol") {
  std::mt19937_64 rng(23);
  Eigen::MatrixXcd h = random_hermitian(6, rng);
  Eigen::VectorXcd psi = random_state(6, rng);
  Eigen::VectorXcd expected = dense_evolve(h, psi, 4.2);

  // max_dim exceeds the space, so Lanczos terminates on an invariant
  // subspace and the loose budget never matters.
  KrylovOptions opts;
  opts.tol = 1e-2;
  Eigen::VectorXcd evolved = psi;
  evolve_krylov(matrix_apply(h), evolved, 4.2, opts);
  CHECK((evolved - expected).norm() <= 1e-9);
}

TEST_CASE("zero time is the identity with zero work") {
  std::mt19937_64 rng(3);
  Eigen::MatrixXcd h = random_hermitian(8, rng);
  Eigen::VectorXcd psi = random_state(8, rng);
  Eigen::VectorXcd before = psi;
  KrylovStats stats = evolve_krylov(matrix_apply(h), psi, 0.0);
  CHECK(stats.steps == 0);
  CHECK(stats.matvecs == 0);
  CHECK(stats.error_estimate == 0.0);
  CHECK((psi - before).norm() == 0.0);
}

TEST_CASE("step underflow raises a numerical error with diagnostics") {
  std::mt19937_64 rng(99);
  Eigen::MatrixXcd h = 1e6 * random_hermitian(16, rng);
  Eigen::VectorXcd psi = random_state(16, rng);
  KrylovOptions opts;
  opts.tol = 1e-18;
  opts.max_dim = 4;
  opts.min_step = 1e-6;
  CHECK_THROWS_AS(evolve_krylov(matrix_apply(h), psi, 1.0, opts),
                  NumericalError);
}

TEST_CASE("invalid arguments are rejected") {
  std::mt19937_64 rng(5);
  Eigen::MatrixXcd h = random_hermitian(4, rng);
  Eigen::VectorXcd psi = random_state(4, rng);
  CHECK_THROWS_AS(evolve_krylov(matrix_apply(h), psi, -1.0), ConfigError);
  KrylovOptions opts;
  opts.tol = 0.0;
  CHECK_THROWS_AS(evolve_krylov(matrix_apply(h), psi, 1.0, opts), ConfigError);
}

}  // namespace kinksim
