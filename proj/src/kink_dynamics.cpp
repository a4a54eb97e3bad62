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

#include "kinksim/kink_dynamics.hpp"

#include <cmath>

#include "kinksim/errors.hpp"

namespace kinksim {

using std::complex;

EffectiveHamiltonian::EffectiveHamiltonian(const KinkPotential& potential,
                                           double hop)
    : g_(hop) {
  if (potential.sites() < 1) throw ConfigError("empty kink potential");
  if (hop < 0.0) throw ConfigError("hop must be >= 0");
  v_ = Eigen::Map<const Eigen::VectorXd>(potential.v.data(),
                                         potential.sites());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense());
  if (es.info() != Eigen::Success)
    throw NumericalError("effective Hamiltonian eigendecomposition failed");
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();
}

Eigen::MatrixXd EffectiveHamiltonian::dense() const {
  const int d = dim();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  h.diagonal() = v_;
  for (int n = 0; n + 1 < d; ++n) {
    h(n, n + 1) = g_;
    h(n + 1, n) = g_;
  }
  return h;
}

Eigen::VectorXcd EffectiveHamiltonian::evolve(const Eigen::VectorXcd& psi,
                                              double t) const {
  if (psi.size() != dim()) throw ConfigError("state dimension mismatch");
  Eigen::VectorXcd coef = eigenvectors_.transpose() * psi;
  for (int k = 0; k < dim(); ++k)
    coef[k] *= std::exp(complex<double>(0.0, -eigenvalues_[k] * t));
  return eigenvectors_ * coef;
}

Eigen::VectorXcd initial_localized(int sites, int n0) {
  if (n0 < 1 || n0 > sites) throw ConfigError("site out of range");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(sites);
  psi[n0 - 1] = 1.0;
  return psi;
}

Eigen::VectorXcd initial_superposition(int sites, int n0, double phi) {
  if (n0 < 1 || n0 + 1 > sites) throw ConfigError("site pair out of range");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(sites);
  const double r = 1.0 / std::sqrt(2.0);
  psi[n0 - 1] = r;
  psi[n0] = r * std::exp(complex<double>(0.0, phi));
  return psi;
}

Eigen::VectorXd kink_distribution(const Eigen::VectorXcd& psi) {
  return psi.cwiseAbs2();
}

double mean_position(const Eigen::VectorXd& p) {
  double m = 0.0;
  for (int n = 0; n < p.size(); ++n) m += (n + 1) * p[n];
  return m;
}

double short_time_drift(const EffectiveHamiltonian& h,
                        const Eigen::VectorXcd& psi0) {
  double s = 0.0;
  for (int n = 0; n + 1 < h.dim(); ++n)
    s += std::imag(std::conj(psi0[n]) * psi0[n + 1]);
  return -2.0 * h.hop() * s;
}

Eigen::VectorXd classical_baseline(int sites, double g,
                                   const Eigen::VectorXd& p0, double t) {
  if (p0.size() != sites) throw ConfigError("population dimension mismatch");
  if (g < 0.0 || t < 0.0) throw ConfigError("g and t must be >= 0");
  // Generator is g * (A - D): symmetric graph Laplacian of the path,
  // so columns sum to zero and probability is conserved.
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(sites, sites);
  for (int n = 0; n + 1 < sites; ++n) {
    lap(n, n + 1) = 1.0;
    lap(n + 1, n) = 1.0;
    lap(n, n) -= 1.0;
    lap(n + 1, n + 1) -= 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
  Eigen::VectorXd coef = es.eigenvectors().transpose() * p0;
  for (int k = 0; k < sites; ++k)
    coef[k] *= std::exp(g * t * es.eigenvalues()[k]);
  return es.eigenvectors() * coef;
}

InterferenceMetrics interference_metrics(const Eigen::VectorXd& p) {
  const int d = static_cast<int>(p.size());
  if (d < 3) throw ConfigError("need at least 3 sites for fringe metrics");

  InterferenceMetrics out;
  // Local maxima; plateaus count once at their leftmost index.
  for (int n = 0; n < d; ++n) {
    if (n > 0 && p[n] == p[n - 1]) continue;  // interior of a plateau
    int right = n;
    while (right + 1 < d && p[right + 1] == p[n]) ++right;
    bool left_ok = (n == 0) || (p[n] > p[n - 1]);
    bool right_ok = (right == d - 1) || (p[n] > p[right + 1]);
    if (left_ok && right_ok) out.peak_sites.push_back(n + 1);
  }

  if (out.peak_sites.size() < 2) return out;  // visibility 0 by convention

  // Two largest peaks, then the minimum strictly between them.
  int best1 = out.peak_sites[0], best2 = out.peak_sites[1];
  for (int site : out.peak_sites) {
    if (p[site - 1] > p[best1 - 1]) {
      best2 = best1;
      best1 = site;
    } else if (site != best1 && p[site - 1] > p[best2 - 1]) {
      best2 = site;
    }
  }
  int lo = std::min(best1, best2), hi = std::max(best1, best2);
  if (hi - lo < 2) return out;
  int dip = lo + 1;
  for (int n = lo + 1; n < hi; ++n)
    if (p[n - 1] < p[dip - 1]) dip = n;
  out.dip_site = dip;
  double peaks = 0.5 * (p[best1 - 1] + p[best2 - 1]);
  double denom = peaks + p[dip - 1];
  out.visibility = denom > 0.0 ? (peaks - p[dip - 1]) / denom : 0.0;
  return out;
}

}  // namespace kinksim
