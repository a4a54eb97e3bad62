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

#include <doctest.h>

#include "kinksim/coupling.hpp"
#include "kinksim/errors.hpp"
#include "kinksim/kink_dynamics.hpp"

using namespace kinksim;

namespace {

KinkPotential flat_potential(int sites) {
  KinkPotential pot;
  pot.v.assign(size_t(sites), 0.0);
  return pot;
}

Eigen::VectorXd make_p(std::initializer_list<double> vals) {
  Eigen::VectorXd p(Eigen::Index(vals.size()));
  Eigen::Index k = 0;
  for (const double v : vals) p[k++] = v;
  return p;
}

}  // namespace

TEST_CASE("two-site hopping follows the Rabi formula") {
  const double g = kTwoPi * 37.0;
  const EffectiveHamiltonian h(flat_potential(2), g);
  const Eigen::VectorXcd psi0 = initial_localized(2, 1);
  for (const double t : {1e-4, 7e-4, 3e-3}) {
    const Eigen::VectorXd p = kink_distribution(h.evolve(psi0, t));
    CHECK(p[0] == doctest::Approx(std::cos(g * t) * std::cos(g * t))
                      .epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(std::sin(g * t) * std::sin(g * t))
                      .epsilon(1e-12));
  }
}

TEST_CASE("evolution is unitary and the dense matrix is tridiagonal") {
  KinkPotential pot = flat_potential(9);
  for (int k = 0; k < 9; ++k) pot.v[size_t(k)] = kTwoPi * 10.0 * (k - 4) * (k - 4);
  const double g = kTwoPi * 55.0;
  const EffectiveHamiltonian h(pot, g);
  const Eigen::MatrixXd m = h.dense();
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b) {
      if (a == b)
        CHECK(m(a, b) == pot.v[size_t(a)]);
      else if (std::abs(a - b) == 1)
        CHECK(m(a, b) == g);
      else
        CHECK(m(a, b) == 0.0);
    }
  const Eigen::VectorXcd psi = h.evolve(initial_localized(9, 5), 0.37);
  CHECK(std::abs(psi.norm() - 1.0) <= 1e-12);
}

TEST_CASE("initial states carry the documented amplitudes") {
  const Eigen::VectorXcd loc = initial_localized(7, 3);
  CHECK(std::abs(loc[2] - 1.0) == 0.0);
  CHECK(loc.norm() == doctest::Approx(1.0).epsilon(1e-15));

  const double phi = 0.83;
  const Eigen::VectorXcd sup = initial_superposition(7, 3, phi);
  CHECK(std::abs(sup[2] - 1.0 / std::sqrt(2.0)) <= 1e-15);
  const std::complex<double> expect =
      std::exp(std::complex<double>(0.0, phi)) / std::sqrt(2.0);
  CHECK(std::abs(sup[3] - expect) <= 1e-15);
  CHECK(sup.norm() == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(initial_localized(5, 0), ConfigError);
  CHECK_THROWS_AS(initial_localized(5, 6), ConfigError);
  CHECK_THROWS_AS(initial_superposition(5, 5, 0.0), ConfigError);
}

TEST_CASE("drift rate on a flat potential is -g sin(phi)") {
  const int sites = 20;
  const double g = kTwoPi * 50.0;
  const EffectiveHamiltonian h(flat_potential(sites), g);
  for (const double phi : {kPi / 2.0, -kPi / 2.0, 0.3}) {
    const Eigen::VectorXcd psi0 = initial_superposition(sites, 10, phi);
    CHECK(short_time_drift(h, psi0) ==
          doctest::Approx(-g * std::sin(phi)).epsilon(1e-12));

    // Independent route: symmetric finite difference of the mean position.
    const double dt = 1e-3 / g;
    const double forward = mean_position(kink_distribution(h.evolve(psi0, dt)));
    const double backward =
        mean_position(kink_distribution(h.evolve(psi0, -dt)));
    CHECK((forward - backward) / (2.0 * dt) ==
          doctest::Approx(-g * std::sin(phi)).epsilon(1e-6));
  }
}

TEST_CASE("centered states stay mirror symmetric") {
  // Symmetric potential, center site of an odd-site lattice.
  const int sites = 19;
  KinkPotential pot = flat_potential(sites);
  for (int k = 0; k < sites; ++k)
    pot.v[size_t(k)] = -kTwoPi * 40.0 * std::abs(k - 9);
  const EffectiveHamiltonian h(pot, kTwoPi * 50.0);
  const Eigen::VectorXcd psi0 = initial_localized(sites, 10);
  for (const double t : {1e-3, 3e-3, 9e-3}) {
    const Eigen::VectorXd p = kink_distribution(h.evolve(psi0, t));
    for (int n = 0; n < sites; ++n)
      CHECK(std::abs(p[n] - p[sites - 1 - n]) <= 1e-8);
    CHECK(mean_position(p) == doctest::Approx(10.0).epsilon(1e-10));
  }
}

TEST_CASE("classical baseline matches an independent integrator") {
  const int sites = 11;
  const double g = kTwoPi * 60.0;
  Eigen::VectorXd p0 = Eigen::VectorXd::Zero(sites);
  p0[5] = 1.0;
  const double t = 2.0e-3;

  // Fixed-step RK4 on dp/dt = g (p_{n-1} + p_{n+1} - 2 p_n).
  const auto rhs = [&](const Eigen::VectorXd& p) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(sites);
    for (int n = 0; n < sites; ++n) {
      double acc = -2.0 * p[n];
      if (n > 0) acc += p[n - 1];
      if (n + 1 < sites) acc += p[n + 1];
      // Conserve probability at the chain ends.
      if (n == 0 || n == sites - 1) acc += p[n];
      d[n] = g * acc;
    }
    return d;
  };
  Eigen::VectorXd p = p0;
  const int steps = 4000;
  const double dt = t / steps;
  for (int k = 0; k < steps; ++k) {
    const Eigen::VectorXd k1 = rhs(p);
    const Eigen::VectorXd k2 = rhs(p + 0.5 * dt * k1);
    const Eigen::VectorXd k3 = rhs(p + 0.5 * dt * k2);
    const Eigen::VectorXd k4 = rhs(p + dt * k3);
    p += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  const Eigen::VectorXd q = classical_baseline(sites, g, p0, t);
  CHECK(q.sum() == doctest::Approx(1.0).epsilon(1e-12));
  for (int n = 0; n < sites; ++n)
    CHECK(q[n] == doctest::Approx(p[n]).epsilon(1e-8));

  // Diffusion never builds an interior dip around the start site.
  CHECK(q[5] >= q[4]);
  CHECK(q[5] >= q[6]);
}

TEST_CASE("interference metrics on hand-built distributions") {
  const InterferenceMetrics two =
      interference_metrics(make_p({0.1, 0.4, 0.1, 0.3, 0.1}));
  CHECK(two.peak_sites == std::vector<int>{2, 4});
  CHECK(two.dip_site == 3);
  CHECK(two.visibility == doctest::Approx((0.35 - 0.1) / (0.35 + 0.1))
                              .epsilon(1e-12));

  // Plateau counts once, at its leftmost site.
  const InterferenceMetrics plateau =
      interference_metrics(make_p({0.2, 0.3, 0.3, 0.2}));
  CHECK(plateau.peak_sites == std::vector<int>{2});
  CHECK(plateau.visibility == 0.0);

  const InterferenceMetrics mono =
      interference_metrics(make_p({0.4, 0.3, 0.2, 0.1}));
  CHECK(mono.peak_sites == std::vector<int>{1});
  CHECK(mono.visibility == 0.0);

  CHECK_THROWS_AS(interference_metrics(make_p({0.5, 0.5})), ConfigError);
}

TEST_CASE("quantum evolution builds a visible fringe where diffusion cannot") {
  // Exact power-law couplings reproduce the interference pattern shape.
  const CouplingMatrix cm = power_law_matrix(20, kTwoPi * 184.0, 1.3);
  const KinkPotential pot = kink_potential(cm);
  const double g = kTwoPi * 50.0;
  const EffectiveHamiltonian h(pot, g);
  const double t = 1.09 * kPi / cm.jmax();

  const Eigen::VectorXd p =
      kink_distribution(h.evolve(initial_localized(19, 10), t));
  const InterferenceMetrics m = interference_metrics(p);
  REQUIRE(m.peak_sites.size() >= 2);
  CHECK(m.dip_site == 10);
  CHECK(m.visibility > 0.2);

  Eigen::VectorXd p0 = Eigen::VectorXd::Zero(19);
  p0[9] = 1.0;
  const Eigen::VectorXd q = classical_baseline(19, g, p0, t);
  const InterferenceMetrics mc = interference_metrics(q);
  CHECK(mc.visibility == 0.0);
}
