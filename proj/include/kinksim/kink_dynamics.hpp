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

#ifndef KINKSIM_KINK_DYNAMICS_HPP
#define KINKSIM_KINK_DYNAMICS_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "kinksim/coupling.hpp"

namespace kinksim {

// Single-kink effective model on the N-1 dual-lattice sites:
// H = sum_n V_n |n><n| + g sum_n (|n><n+1| + h.c.)
class EffectiveHamiltonian {
 public:
  EffectiveHamiltonian(const KinkPotential& potential, double hop);

  int dim() const { return static_cast<int>(v_.size()); }
  double hop() const { return g_; }
  const Eigen::VectorXd& potential() const { return v_; }
  Eigen::MatrixXd dense() const;

  // exp(-i H t) psi via the cached spectral decomposition.
  Eigen::VectorXcd evolve(const Eigen::VectorXcd& psi, double t) const;

 private:
  Eigen::VectorXd v_;
  double g_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
};

// |n0> (1-based site).
Eigen::VectorXcd initial_localized(int sites, int n0);

// (|n0> + e^{i phi} |n0+1>)/sqrt(2).
Eigen::VectorXcd initial_superposition(int sites, int n0, double phi);

// p(n) = |c_n|^2, indexed by 1-based site n -> p[n-1].
Eigen::VectorXd kink_distribution(const Eigen::VectorXcd& psi);

// sum_n n p(n) over 1-based sites.
double mean_position(const Eigen::VectorXd& p);

// d<n>/dt at t=0 from the commutator expectation i<[H, n]>:
// -2 sum_n g Im(c_n^* c_{n+1}). Units: sites per second.
double short_time_drift(const EffectiveHamiltonian& h,
                        const Eigen::VectorXcd& psi0);

// Classical hopping master equation dp/dt = g (p_{n-1} + p_{n+1} - 2 p_n)
// with edge terms truncated so probability is conserved exactly.
Eigen::VectorXd classical_baseline(int sites, double g,
                                   const Eigen::VectorXd& p0, double t);

struct InterferenceMetrics {
  std::vector<int> peak_sites;  // 1-based, ascending
  int dip_site = 0;             // 1-based; 0 when no interior dip exists
  double visibility = 0.0;      // (p_peaks - p_dip) / (p_peaks + p_dip)
};

// Local maxima with plateau ties counted once at the leftmost index.
// The dip is the minimum between the two largest flanking peaks; for fewer
// than two peaks the visibility is 0 by convention.
InterferenceMetrics interference_metrics(const Eigen::VectorXd& p);

}  // namespace kinksim

#endif
