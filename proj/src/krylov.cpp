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

#include "kinksim/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "kinksim/errors.hpp"

namespace kinksim {

namespace {

// exp(-i T tau) e_1 for the real symmetric tridiagonal T given by
// alpha (size m) and beta (size m-1).
Eigen::VectorXcd tridiag_exp_e1(const std::vector<double>& alpha,
                                const std::vector<double>& beta, double tau) {
  const int m = static_cast<int>(alpha.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) t(i, i) = alpha[i];
  for (int i = 0; i + 1 < m; ++i) {
    t(i, i + 1) = beta[i];
    t(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  Eigen::VectorXd first_row = es.eigenvectors().row(0);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(m);
  for (int k = 0; k < m; ++k) {
    std::complex<double> phase =
        std::exp(std::complex<double>(0.0, -es.eigenvalues()[k] * tau));
    out += phase * first_row[k] * es.eigenvectors().col(k);
  }
  return out;
}

}  // namespace

KrylovStats evolve_krylov(const HermitianApply& apply, Eigen::VectorXcd& psi,
                          double t, const KrylovOptions& options) {
  KrylovStats stats;
  if (t == 0.0) return stats;
  if (t < 0.0) throw ConfigError("t must be >= 0");
  if (options.tol <= 0.0) throw ConfigError("tol must be > 0");

  const Eigen::Index dim = psi.size();
  // Keep the stored basis under ~1.5 GB.
  const int mem_cap = static_cast<int>(
      std::max<Eigen::Index>(8, (1500LL << 20) / (16 * dim) - 1));
  const int m_max = std::max(2, std::min(options.max_dim, mem_cap));

  std::vector<Eigen::VectorXcd> basis;
  basis.reserve(m_max + 1);
  Eigen::VectorXcd w(dim);

  double remaining = t;
  double tau = t;
  while (remaining > 0.0) {
    tau = std::min(tau, remaining);
    if (tau < options.min_step * t) {
      std::ostringstream os;
      os << "Krylov step underflow: tau=" << tau << " of t=" << t
         << " after " << stats.steps << " steps, " << stats.matvecs
         << " matvecs (error budget " << options.tol << ")";
      throw NumericalError(os.str());
    }

    const double norm0 = psi.norm();
    basis.clear();
    basis.push_back(psi / norm0);
    std::vector<double> alpha, beta;
    bool breakdown = false;

    while (static_cast<int>(alpha.size()) < m_max && !breakdown) {
      const int j = static_cast<int>(alpha.size());
      apply(basis[j], w);
      ++stats.matvecs;
      if (j > 0) w -= beta[j - 1] * basis[j - 1];
      double a = std::real(basis[j].dot(w));
      w -= a * basis[j];
      // Full reorthogonalization (one classical Gram-Schmidt sweep).
      for (int k = 0; k <= j; ++k) w -= basis[k].dot(w) * basis[k];
      alpha.push_back(a);
      double b = w.norm();
      if (b < 1e-14 * norm0) {
        breakdown = true;  // invariant subspace: result is exact
      } else {
        beta.push_back(b);
        basis.push_back(w / b);
      }
    }

    const int m = static_cast<int>(alpha.size());
    for (;;) {
      Eigen::VectorXcd small = tridiag_exp_e1(alpha, beta, tau);
      // Residual-based local estimate; exact on breakdown.
      double err = breakdown ? 0.0 : beta[m - 1] * std::abs(small[m - 1]);
      const double budget = options.tol * (tau / t);
      if (err <= budget) {
        Eigen::VectorXcd next = Eigen::VectorXcd::Zero(dim);
        for (int k = 0; k < m; ++k) next += small[k] * basis[k];
        psi = norm0 * next;
        ++stats.steps;
        stats.error_estimate += err;
        remaining -= tau;
        if (err > 0.0) {
          double grow = 0.9 * std::pow(budget / err, 1.0 / m);
          tau *= std::clamp(grow, 0.2, 2.0);
        } else {
          tau *= 2.0;
        }
        break;
      }
      double shrink = 0.9 * std::pow(budget / err, 1.0 / m);
      tau *= std::clamp(shrink, 0.1, 0.7);
      if (tau < options.min_step * t) {
        std::ostringstream os;
        os << "Krylov step underflow while shrinking: tau=" << tau
           << ", local error estimate " << err << ", budget " << budget
           << ", subspace dim " << m;
        throw NumericalError(os.str());
      }
    }
  }
  return stats;
}

}  // namespace kinksim
