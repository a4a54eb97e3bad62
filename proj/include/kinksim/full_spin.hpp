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

#ifndef KINKSIM_FULL_SPIN_HPP
#define KINKSIM_FULL_SPIN_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "kinksim/constants.hpp"
#include "kinksim/coupling.hpp"
#include "kinksim/krylov.hpp"

namespace kinksim {

// Bit convention (the single place it is defined): ion i (1-based) is bit
// i-1, so ion 1 is the least significant bit. Bit value 0 means |+> and 1
// means |->; the Hamiltonian is written in the x product basis, where the
// Ising part is diagonal and the transverse field flips single bits.

// |n> = |+>^n |->^(N-n): ions n+1..N carry set bits.
inline uint32_t kink_state_index(int n_ions, int n) {
  return (uint32_t(1) << n_ions) - (uint32_t(1) << n);
}

class FullHamiltonian {
 public:
  // H = -sum_{i<j} J_ij sx_i sx_j + g sum_i sz_i. Throws ConfigError when
  // N exceeds the cap.
  static FullHamiltonian build(const CouplingMatrix& coupling, int cap = 21);

  int n_ions() const { return n_; }
  size_t dim() const { return size_t(1) << n_; }
  double field() const { return g_; }
  const Eigen::VectorXd& diagonal() const { return diag_; }

  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;
  Eigen::MatrixXcd dense() const;  // guarded to N <= 12

 private:
  int n_ = 0;
  double g_ = 0.0;
  Eigen::VectorXd diag_;
};

struct NoiseModel {
  bool enabled = false;
  double detect_center = 0.02;
  double detect_edge = 0.03;
  double crosstalk_left = 0.025;
  double crosstalk_right = 0.05;

  // Per-ion detection flip probability, linear from center to edges.
  std::vector<double> detection_profile(int n_ions) const;
};

// Product state |n0>, or (|n0> + e^{i phi}|n0+1>)/sqrt(2) when phi is set.
// With noise enabled, the residual addressing crosstalk of the final
// individually addressed pulse is applied: a z rotation of
// angle*crosstalk_left on its left neighbor and angle*crosstalk_right on
// its right neighbor, where the final pulse is the pi flip on ion n0 for
// the plain kink and the phase rotation (phi mod 2 pi) on ion n0+1 for the
// superposition. Earlier pulses are compensated exactly.
Eigen::VectorXcd prepare_kink_state(int n_ions, int n0,
                                    std::optional<double> phi,
                                    const NoiseModel& noise = {});

struct SingleKinkProjection {
  Eigen::VectorXd p;      // renormalized over the N-1 single-kink states
  double leakage = 0.0;   // 1 - total single-kink weight
};

// Throws NumericalError when the single-kink weight is zero.
SingleKinkProjection single_kink_projection(const Eigen::VectorXcd& psi,
                                            int n_ions);

// psi <- exp(-i H t) psi, adaptive Krylov. Norm drift <= 1e-8 overall.
KrylovStats evolve_full(const FullHamiltonian& h, Eigen::VectorXcd& psi,
                        double t, double tol = 1e-8);

struct MeasurementRecord {
  int n_ions = 0;
  long shots = 0;
  uint64_t seed = 0;
  NoiseModel noise;
  std::vector<uint32_t> bitstrings;   // one per shot
  std::vector<int> kink_counts;       // domain walls per shot
};

// Number of adjacent sign changes in the x-basis string.
int count_kinks(uint32_t bits, int n_ions);

// Samples bitstrings from |psi|^2, then applies independent per-ion
// detection flips. Deterministic per (seed, shot index).
MeasurementRecord sample_x_basis(const Eigen::VectorXcd& psi, int n_ions,
                                 long shots, uint64_t seed,
                                 const NoiseModel& noise = {});

struct PostSelection {
  Eigen::VectorXd p;            // wall-position frequencies over N-1 sites
  double retained_fraction = 0.0;
  long kept = 0;
};

// Keeps exactly-one-wall shots. Throws NumericalError when none remain.
PostSelection post_select_single_kink(const MeasurementRecord& record);

struct SpectroscopyResult {
  std::vector<double> omega_p;  // rad/s probe grid
  Eigen::MatrixXd response;     // (grid point, ion) -> flip probability
  double b_p = 0.0;
  double t_probe = 0.0;

  double half_linewidth() const { return kTwoPi / t_probe / 2.0; }
};

// H_probe = H_xx + B_p sin(w_p t) sum_i sy_i applied to |->^N with
// piecewise-constant steps (50 per probe period). Dense propagation,
// supported for N <= 9; throws ConfigError on bad arguments.
SpectroscopyResult probe_spectroscopy(const CouplingMatrix& coupling,
                                      double b_p,
                                      const std::vector<double>& omega_grid,
                                      double t_probe);

// Per-ion peak locations (rad/s), parabolic refinement around the argmax.
std::vector<double> spectroscopy_peaks(const SpectroscopyResult& result);

}  // namespace kinksim

#endif
