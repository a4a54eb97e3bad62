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
#include <random>

#include <doctest.h>

#include "kinksim/coupling.hpp"
#include "kinksim/errors.hpp"
#include "kinksim/full_spin.hpp"

using namespace kinksim;

namespace {

struct Chain {
  TrapConfig trap;
  IonPositions positions;
  ModeSpectrum modes;
};

Chain reference_chain(int n) {
  Chain c;
  c.trap.ion_count = n;
  c.trap.axial_freq = axial_freq_for_min_spacing(n, 4.7e-6);
  c.trap.transverse_freq = kTwoPi * 3.16e6;
  c.positions = solve_equilibrium(c.trap);
  c.modes = lamb_dicke(transverse_modes(c.positions, c.trap), c.trap);
  return c;
}

std::vector<double> uniform_rabi(int n, double value) {
  return std::vector<double>(size_t(n), value);
}

CouplingMatrix random_coupling(int n, uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(0.2, 1.0);
  CouplingMatrix cm;
  cm.j = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = kTwoPi * 100.0 * uni(rng);
      cm.j(i, j) = v;
      cm.j(j, i) = v;
    }
  return cm;
}

}  // namespace

TEST_CASE("detuning rule sits 3 eta Omega above the COM mode") {
  const Chain c = reference_chain(5);
  const double omega = kTwoPi * 40e3;
  const double mu = detuning_rule(c.modes, omega);
  CHECK(mu == doctest::Approx(c.modes.com_freq() +
                              3.0 * c.modes.eta_com() * omega)
                  .epsilon(1e-14));
}

TEST_CASE("two-ion coupling matches the hand-evaluated mode sum") {
  // Synthetic two-mode spectrum with analytic vectors.
  ModeSpectrum m;
  m.freqs = {kTwoPi * 3.0e6, kTwoPi * 2.9e6};
  m.vectors.resize(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  m.vectors << r, r, r, -r;
  m.eta = {0.08, 0.081};
  const double mu = kTwoPi * 3.02e6;
  const double omega = kTwoPi * 50e3;

  const CouplingMatrix cm =
      coupling_matrix(uniform_rabi(2, omega), m, mu, 0.0);
  double expect = 0.0;
  for (int k = 0; k < 2; ++k) {
    const double b1 = m.vectors(0, k), b2 = m.vectors(1, k);
    const double w = m.freqs[size_t(k)];
    expect += omega * omega * m.eta[size_t(k)] * m.eta[size_t(k)] * b1 * b2 *
              w / (mu * mu - w * w);
  }
  CHECK(cm.j(0, 1) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(cm.j(1, 0) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(cm.j(0, 0) == 0.0);
}

TEST_CASE("resonant drive is rejected by the guard") {
  const Chain c = reference_chain(4);
  const double mu = c.modes.freqs[1] + kTwoPi * 200.0;  // 200 Hz off a mode
  CHECK_THROWS_AS(
      coupling_matrix(uniform_rabi(4, kTwoPi * 50e3), c.modes, mu, 0.0),
      NumericalError);
}

TEST_CASE("peak Rabi solve hits the target through the detuning rule") {
  const Chain c = reference_chain(21);
  BeamProfile beam;
  beam.fwhm = 143e-6;
  const double target = kTwoPi * 184.0;
  const double omega = solve_peak_rabi(target, c.modes, c.positions, beam);
  beam.peak_rabi = omega;
  const double mu = detuning_rule(c.modes, omega);
  const CouplingMatrix cm =
      coupling_matrix(rabi_profile(c.positions, beam), c.modes, mu, 0.0);
  CHECK(cm.jmax() == doctest::Approx(target).epsilon(1e-3));
}

TEST_CASE("fixed-detuning solve is exact by quadratic scaling") {
  const Chain c = reference_chain(21);
  BeamProfile beam;
  beam.fwhm = 143e-6;
  const double mu = c.modes.com_freq() + kTwoPi * 5.0e3;
  const double target = kTwoPi * 184.0;
  const double omega =
      solve_peak_rabi_at(target, c.modes, c.positions, beam, mu);
  beam.peak_rabi = omega;
  const CouplingMatrix cm =
      coupling_matrix(rabi_profile(c.positions, beam), c.modes, mu, 0.0);
  CHECK(cm.jmax() == doctest::Approx(target).epsilon(1e-12));
}

TEST_CASE("detuning calibration reaches the target power-law exponent") {
  const Chain c = reference_chain(21);
  BeamProfile beam;
  beam.fwhm = 143e-6;
  const double off = solve_detuning_for_alpha(1.3, c.modes, c.positions, beam);
  // Regression pin for the calibrated working point.
  CHECK(off / kTwoPi == doctest::Approx(5260.738).epsilon(1e-5));

  beam.peak_rabi = kTwoPi * 50e3;
  const CouplingMatrix cm = coupling_matrix(
      rabi_profile(c.positions, beam), c.modes, c.modes.com_freq() + off, 0.0);
  CHECK(power_law_fit(cm).alpha == doctest::Approx(1.3).epsilon(1e-8));

  // An exponent outside the reachable band for this spectrum.
  CHECK_THROWS_AS(solve_detuning_for_alpha(2.9, c.modes, c.positions, beam),
                  NumericalError);
}

TEST_CASE("uniform nearest-neighbor couplings give a flat 2J0 potential") {
  const int n = 9;
  const double j0 = kTwoPi * 120.0;
  CouplingMatrix cm;
  cm.j = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    cm.j(i, i + 1) = j0;
    cm.j(i + 1, i) = j0;
  }
  const KinkPotential pot = kink_potential(cm);
  CHECK(pot.zero_offset == 2.0 * j0);
  for (int k = 0; k < pot.sites(); ++k) CHECK(pot.v[size_t(k)] == 0.0);
}

TEST_CASE("kink potential equals the Ising energy bookkeeping") {
  // Second route: V_n up to a constant is the diagonal of the full
  // Hamiltonian at the kink configurations.
  const CouplingMatrix cm = random_coupling(7, 11);
  const KinkPotential pot = kink_potential(cm);
  const FullHamiltonian h = FullHamiltonian::build(cm);
  const double e_ferro = h.diagonal()[0];
  const int center = KinkPotential::center_site(7);
  const double center_raw =
      h.diagonal()[kink_state_index(7, center)] - e_ferro;
  for (int n = 1; n <= pot.sites(); ++n) {
    const double raw =
        h.diagonal()[kink_state_index(7, n)] - e_ferro;
    CHECK(pot.v[size_t(n - 1)] ==
          doctest::Approx(raw - center_raw).epsilon(1e-12));
  }
  CHECK(pot.zero_offset == doctest::Approx(center_raw).epsilon(1e-12));
  CHECK(pot.v[size_t(center - 1)] == 0.0);
}

TEST_CASE("center site convention rounds up") {
  CHECK(KinkPotential::center_site(20) == 10);
  CHECK(KinkPotential::center_site(21) == 10);
  CHECK(KinkPotential::center_site(5) == 2);
  CHECK(KinkPotential::center_site(6) == 3);
}

TEST_CASE("spin-flip energy is twice the coupling row sum") {
  const CouplingMatrix cm = random_coupling(6, 17);
  const FullHamiltonian h = FullHamiltonian::build(cm);
  const size_t ferro = h.dim() - 1;  // all |->
  for (int i = 1; i <= 6; ++i) {
    double row = 0.0;
    for (int j = 0; j < 6; ++j) row += cm.j(i - 1, j);
    CHECK(spin_flip_energy(cm, i) == doctest::Approx(2.0 * row).epsilon(1e-13));
    // Flipping one spin of the ferromagnet costs exactly this energy.
    const size_t flipped = ferro ^ (size_t(1) << (i - 1));
    const double de = h.diagonal()[Eigen::Index(flipped)] -
                      h.diagonal()[Eigen::Index(ferro)];
    CHECK(spin_flip_energy(cm, i) == doctest::Approx(de).epsilon(1e-12));
  }
}

TEST_CASE("excitation gap equals the diagonal energy difference") {
  const CouplingMatrix cm = random_coupling(6, 23);
  const FullHamiltonian h = FullHamiltonian::build(cm);
  for (int n = 1; n <= 5; ++n) {
    const size_t kink = kink_state_index(6, n);
    for (int i = 1; i <= 6; ++i) {
      if (i == n || i == n + 1) {
        CHECK_THROWS_AS(excitation_gap(cm, n, i), ConfigError);
        continue;
      }
      const size_t excited = kink ^ (size_t(1) << (i - 1));
      const double de = h.diagonal()[Eigen::Index(excited)] -
                        h.diagonal()[Eigen::Index(kink)];
      CHECK(excitation_gap(cm, n, i) == doctest::Approx(de).epsilon(1e-12));
    }
  }
}

TEST_CASE("power-law fit inverts an exact power law") {
  const CouplingMatrix cm = power_law_matrix(12, kTwoPi * 300.0, 1.27);
  const PowerLawFit fit = power_law_fit(cm);
  CHECK(fit.j0 == doctest::Approx(kTwoPi * 300.0).epsilon(1e-12));
  CHECK(fit.alpha == doctest::Approx(1.27).epsilon(1e-12));
  CHECK(fit.residual <= 1e-12);

  // Mild multiplicative noise barely moves the exponent.
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> uni(-0.01, 0.01);
  CouplingMatrix noisy = cm;
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j) {
      noisy.j(i, j) *= 1.0 + uni(rng);
      noisy.j(j, i) = noisy.j(i, j);
    }
  CHECK(power_law_fit(noisy).alpha == doctest::Approx(1.27).epsilon(0.03));

  CouplingMatrix bad = cm;
  bad.j(0, 11) = -bad.j(0, 11);
  bad.j(11, 0) = bad.j(0, 11);
  CHECK_THROWS_AS(power_law_fit(bad), NumericalError);
}

TEST_CASE("subset fit ignores ions outside the window") {
  CouplingMatrix cm = power_law_matrix(10, kTwoPi * 200.0, 1.4);
  // Corrupt couplings that touch the edge ions only.
  for (int j = 1; j < 10; ++j) {
    cm.j(0, j) *= 3.0;
    cm.j(j, 0) = cm.j(0, j);
  }
  const PowerLawFit inner = power_law_fit_subset(cm, 2, 10);
  CHECK(inner.alpha == doctest::Approx(1.4).epsilon(1e-12));
  CHECK_THROWS_AS(power_law_fit_subset(cm, 5, 5), ConfigError);
}

TEST_CASE("coupling carries positive entries on the calibrated chain") {
  const Chain c = reference_chain(10);
  BeamProfile beam;
  beam.fwhm = 143e-6;
  const double off = solve_detuning_for_alpha(1.3, c.modes, c.positions, beam);
  beam.peak_rabi = kTwoPi * 40e3;
  const CouplingMatrix cm = coupling_matrix(
      rabi_profile(c.positions, beam), c.modes, c.modes.com_freq() + off, 0.0);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      if (i == j) continue;
      CHECK(cm.j(i, j) > 0.0);
      CHECK(cm.j(i, j) == cm.j(j, i));
    }
}
