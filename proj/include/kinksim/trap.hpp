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

#ifndef KINKSIM_TRAP_HPP
#define KINKSIM_TRAP_HPP

#include <vector>

#include <Eigen/Dense>

#include "kinksim/constants.hpp"

namespace kinksim {

// All frequencies are angular (rad/s) internally; I/O layers report Hz.

struct TrapConfig {
  int ion_count = 0;
  double axial_freq = 0.0;       // rad/s
  double transverse_freq = 0.0;  // rad/s
  double ion_mass = kYb171Mass;  // kg
  double raman_dk = 0.0;         // rad/m; 0 means default_raman_dk()

  double dk() const { return raman_dk > 0.0 ? raman_dk : default_raman_dk(); }
  void validate() const;  // throws ConfigError
};

struct IonPositions {
  std::vector<double> z;  // meters, ascending
  double length_scale = 0.0;  // l = (e^2/(4 pi eps0 m wz^2))^(1/3), meters

  int size() const { return static_cast<int>(z.size()); }
  double min_spacing() const;
  double max_spacing() const;
};

struct ModeSpectrum {
  // Sorted by descending frequency; column k of `vectors` is mode k.
  // vectors is orthonormal, so the COM column is 1/sqrt(N).
  std::vector<double> freqs;  // rad/s
  Eigen::MatrixXd vectors;    // b(i, k)
  std::vector<double> eta;    // Lamb-Dicke per mode; empty until lamb_dicke()

  int size() const { return static_cast<int>(freqs.size()); }
  double com_freq() const { return freqs.front(); }
  double eta_com() const { return eta.front(); }
};

struct BeamProfile {
  double center = 0.0;     // meters
  double fwhm = 0.0;       // meters, of the Rabi frequency profile
  double peak_rabi = 0.0;  // rad/s
};

// Minimizes the harmonic-plus-Coulomb axial potential in dimensionless
// coordinates (damped Newton, gradient norm <= 1e-12), then scales by l.
IonPositions solve_equilibrium(const TrapConfig& trap);

// Eigendecomposition of the transverse Hessian about the equilibrium.
// Throws NumericalError on a non-positive eigenvalue (zigzag instability).
ModeSpectrum transverse_modes(const IonPositions& positions,
                              const TrapConfig& trap);

// Fills eta_k = dk * sqrt(hbar / (2 m w_k)). The collective 1/sqrt(N)
// factor lives in the orthonormal mode vectors, not in eta.
ModeSpectrum lamb_dicke(ModeSpectrum spectrum, const TrapConfig& trap);

// Omega_i = peak_rabi * exp(-4 ln2 (z_i - center)^2 / fwhm^2)
std::vector<double> rabi_profile(const IonPositions& positions,
                                 const BeamProfile& beam);

struct AxialFitResult {
  TrapConfig config;
  double residual = 0.0;  // rad/s, rms over the measured set
};

// Least-squares wz (and wx if >= 2 frequencies) against measured transverse
// mode frequencies, sorted descending. Throws NumericalError when the
// objective cannot constrain wz (fewer than 2 frequencies).
AxialFitResult fit_axial_frequency(const std::vector<double>& measured,
                                   TrapConfig guess);

// Axial frequency for which the N-ion chain's minimum spacing equals
// `spacing` (meters). Inverts l(wz) through the dimensionless equilibrium.
double axial_freq_for_min_spacing(int ion_count, double spacing,
                                  double ion_mass = kYb171Mass);

}  // namespace kinksim

#endif
