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

#ifndef KINKSIM_COUPLING_HPP
#define KINKSIM_COUPLING_HPP

#include <vector>

#include <Eigen/Dense>

#include "kinksim/trap.hpp"

namespace kinksim {

struct CouplingMatrix {
  Eigen::MatrixXd j;   // rad/s, symmetric, zero diagonal
  double mu = 0.0;     // rad/s
  double g = 0.0;      // rad/s transverse field carried alongside

  int size() const { return static_cast<int>(j.rows()); }
  double jmax() const;
};

struct KinkPotential {
  std::vector<double> v;      // rad/s, N-1 dual-lattice sites (1-based site n -> v[n-1])
  double zero_offset = 0.0;   // rad/s value subtracted so the center site is zero

  int sites() const { return static_cast<int>(v.size()); }
  // Center site per the tie convention: n = ceil((N-1)/2), 1-based.
  static int center_site(int n_ions) { return (n_ions - 1 + 1) / 2; }
};

struct PowerLawFit {
  double j0 = 0.0;       // rad/s
  double alpha = 0.0;
  double residual = 0.0; // rms of log-space residuals
};

// mu = w_COM + 3 eta_COM Omega_c. Throws NumericalError if mu fails to
// clear every mode (cannot happen for Omega_c > 0, checked anyway).
double detuning_rule(const ModeSpectrum& spectrum, double peak_rabi);

// J_ij = Omega_i Omega_j sum_k eta_k^2 b_ik b_jk w_k / (mu^2 - w_k^2).
// Rejects mu within the resonance guard (2 pi x 1 kHz) of any mode.
CouplingMatrix coupling_matrix(const std::vector<double>& rabi,
                               const ModeSpectrum& spectrum, double mu,
                               double g = 0.0);

// Root-finds Omega_c so that max J_ij = target, with mu coupled through
// detuning_rule. Residual <= 0.1%.
double solve_peak_rabi(double target_jmax, const ModeSpectrum& spectrum,
                       const IonPositions& positions, BeamProfile beam);

// Same solve at a fixed mu (exact: J scales as Omega_c^2 there).
double solve_peak_rabi_at(double target_jmax, const ModeSpectrum& spectrum,
                          const IonPositions& positions, BeamProfile beam,
                          double mu);

// Root-finds the detuning offset above the COM mode so the all-pairs
// power-law fit of the resulting matrix returns `alpha_target`.
// The J magnitude cancels, so any positive peak Rabi works internally.
double solve_detuning_for_alpha(double alpha_target,
                                const ModeSpectrum& spectrum,
                                const IonPositions& positions,
                                const BeamProfile& beam);

// V_n = 2 sum_{i<=n, j>n} J_ij, offset so the center site reads zero.
KinkPotential kink_potential(const CouplingMatrix& coupling);

// Delta E_i = 2 sum_{j != i} J_ij. Ion index i is 1-based.
double spin_flip_energy(const CouplingMatrix& coupling, int i);

// Energy cost of applying sigma_z^i to |n| (two-branch formula; i is a
// 1-based ion, n a 1-based kink site). Throws ConfigError for i in
// {n, n+1}: those flips move the kink instead of creating new ones.
double excitation_gap(const CouplingMatrix& coupling, int n, int i);

// Unweighted log-log least squares over all pairs. Throws NumericalError
// if any off-diagonal J_ij <= 0.
PowerLawFit power_law_fit(const CouplingMatrix& coupling);

// Same fit restricted to pairs with both ions in [i_min, i_max] (1-based).
PowerLawFit power_law_fit_subset(const CouplingMatrix& coupling, int i_min,
                                 int i_max);

// Synthetic exact power-law matrix J0/|i-j|^alpha (test and oracle helper).
CouplingMatrix power_law_matrix(int n_ions, double j0, double alpha,
                                double g = 0.0);

}  // namespace kinksim

#endif
