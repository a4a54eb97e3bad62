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

#include "kinksim/trap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kinksim/errors.hpp"

namespace kinksim {

void TrapConfig::validate() const {
  if (ion_count < 1) throw ConfigError("ion_count must be >= 1");
  if (!(axial_freq > 0.0)) throw ConfigError("axial_freq must be > 0");
  if (!(transverse_freq > axial_freq))
    throw ConfigError("transverse_freq must exceed axial_freq (linear chain)");
  if (!(ion_mass > 0.0)) throw ConfigError("ion_mass must be > 0");
}

double IonPositions::min_spacing() const {
  double m = std::numeric_limits<double>::infinity();
  for (size_t i = 1; i < z.size(); ++i) m = std::min(m, z[i] - z[i - 1]);
  return m;
}

double IonPositions::max_spacing() const {
  double m = 0.0;
  for (size_t i = 1; i < z.size(); ++i) m = std::max(m, z[i] - z[i - 1]);
  return m;
}

namespace {

// Gradient of Phi(u) = sum u_i^2/2 + sum_{i<j} 1/|u_i - u_j|.
Eigen::VectorXd axial_gradient(const Eigen::VectorXd& u) {
  const int n = static_cast<int>(u.size());
  Eigen::VectorXd g = u;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double d = u[i] - u[j];
      g[i] -= (d > 0 ? 1.0 : -1.0) / (d * d);
    }
  }
  return g;
}

Eigen::VectorXd dimensionless_equilibrium(int n) {
  if (n == 1) return Eigen::VectorXd::Zero(1);
  Eigen::VectorXd u(n);
  const double span = std::pow(static_cast<double>(n), 0.56);
  for (int i = 0; i < n; ++i)
    u[i] = (-1.0 + 2.0 * i / (n - 1)) * span;

  const double tol = 1e-13;
  for (int iter = 0; iter < 200; ++iter) {
    Eigen::VectorXd grad = axial_gradient(u);
    if (grad.cwiseAbs().maxCoeff() < tol) return u;

    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      double diag = 1.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        double inv3 = 1.0 / std::pow(std::abs(u[i] - u[j]), 3.0);
        hess(i, j) = -2.0 * inv3;
        diag += 2.0 * inv3;
      }
      hess(i, i) = diag;
    }
    Eigen::VectorXd step = hess.ldlt().solve(grad);

    double lambda = 1.0;
    const double g0 = grad.norm();
    for (int back = 0; back < 40; ++back) {
      Eigen::VectorXd trial = u - lambda * step;
      std::sort(trial.data(), trial.data() + n);
      if (axial_gradient(trial).norm() < g0) break;
      lambda *= 0.5;
    }
    u -= lambda * step;
    std::sort(u.data(), u.data() + n);
  }

  double resid = axial_gradient(u).cwiseAbs().maxCoeff();
  if (resid >= 1e-12) {
    std::ostringstream os;
    os << "equilibrium solver did not converge for N=" << n
       << " (gradient residual " << resid << ")";
    throw NumericalError(os.str());
  }
  return u;
}

}  // namespace

IonPositions solve_equilibrium(const TrapConfig& trap) {
  trap.validate();
  const double wz = trap.axial_freq;
  const double l =
      std::cbrt(kCoulombConstant / (trap.ion_mass * wz * wz));
  Eigen::VectorXd u = dimensionless_equilibrium(trap.ion_count);
  IonPositions out;
  out.length_scale = l;
  out.z.resize(trap.ion_count);
  for (int i = 0; i < trap.ion_count; ++i) out.z[i] = u[i] * l;
  return out;
}

ModeSpectrum transverse_modes(const IonPositions& positions,
                              const TrapConfig& trap) {
  trap.validate();
  const int n = positions.size();
  if (n != trap.ion_count)
    throw ConfigError("positions/ion_count mismatch");
  const double l = positions.length_scale;
  const double ratio2 = std::pow(trap.transverse_freq / trap.axial_freq, 2.0);

  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double diag = ratio2;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double inv3 = std::pow(l / std::abs(positions.z[i] - positions.z[j]), 3.0);
      k(i, j) = inv3;
      diag -= inv3;
    }
    k(i, i) = diag;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
  if (es.info() != Eigen::Success)
    throw NumericalError("transverse Hessian eigendecomposition failed");

  ModeSpectrum spec;
  spec.freqs.resize(n);
  spec.vectors.resize(n, n);
  // Eigen returns ascending eigenvalues; store descending (COM first).
  for (int k2 = 0; k2 < n; ++k2) {
    int src = n - 1 - k2;
    double lam = es.eigenvalues()[src];
    if (!(lam > 0.0)) {
      std::ostringstream os;
      os << "non-positive transverse mode " << k2
         << " (lambda=" << lam << "): zigzag instability";
      throw NumericalError(os.str());
    }
    spec.freqs[k2] = trap.axial_freq * std::sqrt(lam);
    Eigen::VectorXd v = es.eigenvectors().col(src);
    for (int i = 0; i < n; ++i) {
      if (std::abs(v[i]) > 1e-9) {
        if (v[i] < 0.0) v = -v;
        break;
      }
    }
    spec.vectors.col(k2) = v;
  }
  return spec;
}

ModeSpectrum lamb_dicke(ModeSpectrum spectrum, const TrapConfig& trap) {
  if (!(trap.dk() > 0.0)) throw ConfigError("raman_dk must be > 0");
  spectrum.eta.resize(spectrum.freqs.size());
  for (size_t k = 0; k < spectrum.freqs.size(); ++k) {
    spectrum.eta[k] =
        trap.dk() * std::sqrt(kHbar / (2.0 * trap.ion_mass * spectrum.freqs[k]));
  }
  return spectrum;
}

std::vector<double> rabi_profile(const IonPositions& positions,
                                 const BeamProfile& beam) {
  if (!(beam.fwhm > 0.0)) throw ConfigError("beam fwhm must be > 0");
  if (!(beam.peak_rabi > 0.0)) throw ConfigError("peak_rabi must be > 0");
  std::vector<double> omega(positions.z.size());
  const double c = 4.0 * std::log(2.0) / (beam.fwhm * beam.fwhm);
  for (size_t i = 0; i < positions.z.size(); ++i) {
    double dz = positions.z[i] - beam.center;
    omega[i] = beam.peak_rabi * std::exp(-c * dz * dz);
  }
  return omega;
}

namespace {

double mode_rms_residual(const std::vector<double>& measured,
                         const TrapConfig& trap) {
  IonPositions pos = solve_equilibrium(trap);
  ModeSpectrum spec = transverse_modes(pos, trap);
  double s = 0.0;
  for (size_t k = 0; k < measured.size(); ++k) {
    double d = spec.freqs[k] - measured[k];
    s += d * d;
  }
  return std::sqrt(s / measured.size());
}

}  // namespace

AxialFitResult fit_axial_frequency(const std::vector<double>& measured,
                                   TrapConfig guess) {
  guess.validate();
  if (measured.empty()) throw ConfigError("no measured frequencies");
  if (static_cast<int>(measured.size()) > guess.ion_count)
    throw ConfigError("more measured frequencies than modes");
  for (size_t k = 1; k < measured.size(); ++k)
    if (measured[k] > measured[k - 1])
      throw ConfigError("measured frequencies must be sorted descending");

  // The COM frequency pins wx directly.
  guess.transverse_freq = measured[0];
  if (measured.size() < 2)
    throw NumericalError(
        "only the COM frequency given: wz unconstrained (flat objective)");

  // Golden-section on log(wz); the residual is smooth and unimodal in the
  // bracket around any reasonable guess.
  double lo = std::log(guess.axial_freq) - std::log(10.0);
  double hi = std::log(guess.axial_freq) + std::log(10.0);
  auto eval = [&](double logwz) {
    TrapConfig t = guess;
    t.axial_freq = std::exp(logwz);
    if (t.axial_freq >= t.transverse_freq) return 1e300;
    try {
      return mode_rms_residual(measured, t);
    } catch (const NumericalError&) {
      return 1e300;
    }
  };
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = eval(c), fd = eval(d);
  for (int it = 0; it < 120; ++it) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - gr * (b - a);
      fc = eval(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + gr * (b - a);
      fd = eval(d);
    }
    if (b - a < 1e-12) break;
  }
  double best = 0.5 * (a + b);
  AxialFitResult out;
  out.config = guess;
  out.config.axial_freq = std::exp(best);
  out.residual = eval(best);
  if (out.residual >= 1e299)
    throw NumericalError("axial frequency fit failed (degenerate objective)");
  return out;
}

double axial_freq_for_min_spacing(int ion_count, double spacing,
                                  double ion_mass) {
  if (ion_count < 2) throw ConfigError("need >= 2 ions to define a spacing");
  if (!(spacing > 0.0)) throw ConfigError("spacing must be > 0");
  Eigen::VectorXd u = dimensionless_equilibrium(ion_count);
  double dmin = std::numeric_limits<double>::infinity();
  for (int i = 1; i < ion_count; ++i) dmin = std::min(dmin, u[i] - u[i - 1]);
  const double l = spacing / dmin;
  return std::sqrt(kCoulombConstant / (ion_mass * l * l * l));
}

}  // namespace kinksim
