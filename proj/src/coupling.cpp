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

#include "kinksim/coupling.hpp"

#include <cmath>
#include <sstream>

#include "kinksim/errors.hpp"

namespace kinksim {

namespace {
constexpr double kResonanceGuard = kTwoPi * 1e3;  // rad/s
}

double CouplingMatrix::jmax() const {
  double m = 0.0;
  for (int i = 0; i < size(); ++i)
    for (int jj = i + 1; jj < size(); ++jj) m = std::max(m, j(i, jj));
  return m;
}

double detuning_rule(const ModeSpectrum& spectrum, double peak_rabi) {
  if (spectrum.eta.empty())
    throw ConfigError("spectrum has no Lamb-Dicke parameters");
  if (peak_rabi < 0.0) throw ConfigError("peak_rabi must be >= 0");
  double mu = spectrum.com_freq() + 3.0 * spectrum.eta_com() * peak_rabi;
  for (double w : spectrum.freqs)
    if (mu < w)
      throw NumericalError("detuning rule left mu below a mode frequency");
  return mu;
}

CouplingMatrix coupling_matrix(const std::vector<double>& rabi,
                               const ModeSpectrum& spectrum, double mu,
                               double g) {
  const int n = spectrum.size();
  if (static_cast<int>(rabi.size()) != n)
    throw ConfigError("rabi list size does not match spectrum");
  if (spectrum.eta.empty())
    throw ConfigError("spectrum has no Lamb-Dicke parameters");
  for (int k = 0; k < n; ++k) {
    if (std::abs(mu - spectrum.freqs[k]) < kResonanceGuard) {
      std::ostringstream os;
      os << "mu within resonance guard of mode " << k << " ("
         << spectrum.freqs[k] / kTwoPi << " Hz)";
      throw NumericalError(os.str());
    }
  }

  CouplingMatrix out;
  out.mu = mu;
  out.g = g;
  out.j = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int jj = i + 1; jj < n; ++jj) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) {
        double w = spectrum.freqs[k];
        s += spectrum.eta[k] * spectrum.eta[k] * spectrum.vectors(i, k) *
             spectrum.vectors(jj, k) * w / (mu * mu - w * w);
      }
      double val = rabi[i] * rabi[jj] * s;
      out.j(i, jj) = val;
      out.j(jj, i) = val;
    }
  }
  return out;
}

namespace {

double jmax_with_rule(double peak_rabi, const ModeSpectrum& spectrum,
                      const IonPositions& positions, BeamProfile beam) {
  beam.peak_rabi = peak_rabi;
  double mu = detuning_rule(spectrum, peak_rabi);
  return coupling_matrix(rabi_profile(positions, beam), spectrum, mu).jmax();
}

}  // namespace

double solve_peak_rabi(double target_jmax, const ModeSpectrum& spectrum,
                       const IonPositions& positions, BeamProfile beam) {
  if (target_jmax == 0.0) return 0.0;
  if (target_jmax < 0.0) throw ConfigError("target Jmax must be >= 0");

  // The response is monotone in Omega_c. The rule mu = com + 3 eta Omega_c
  // must clear the COM resonance guard, which bounds Omega_c from below.
  double lo = 1.001 * kResonanceGuard / (3.0 * spectrum.eta_com());
  if (jmax_with_rule(lo, spectrum, positions, beam) > target_jmax)
    throw NumericalError(
        "target Jmax needs a detuning inside the resonance guard");
  double hi = std::max(kTwoPi * 1e5, 2.0 * lo);
  int grow = 0;
  while (jmax_with_rule(hi, spectrum, positions, beam) < target_jmax) {
    hi *= 2.0;
    if (++grow > 40) throw NumericalError("no Omega_c bracket for target Jmax");
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (jmax_with_rule(mid, spectrum, positions, beam) < target_jmax)
      lo = mid;
    else
      hi = mid;
    if ((hi - lo) / hi < 1e-12) break;
  }
  double omega = 0.5 * (lo + hi);
  double achieved = jmax_with_rule(omega, spectrum, positions, beam);
  if (std::abs(achieved - target_jmax) > 1e-3 * target_jmax)
    throw NumericalError("peak Rabi solve did not reach 0.1% residual");
  return omega;
}

double solve_peak_rabi_at(double target_jmax, const ModeSpectrum& spectrum,
                          const IonPositions& positions, BeamProfile beam,
                          double mu) {
  if (target_jmax == 0.0) return 0.0;
  if (target_jmax < 0.0) throw ConfigError("target Jmax must be >= 0");
  beam.peak_rabi = 1.0;
  double unit = coupling_matrix(rabi_profile(positions, beam), spectrum, mu)
                    .jmax();
  if (!(unit > 0.0))
    throw NumericalError("unit-Rabi Jmax not positive at this detuning");
  return std::sqrt(target_jmax / unit);
}

double solve_detuning_for_alpha(double alpha_target,
                                const ModeSpectrum& spectrum,
                                const IonPositions& positions,
                                const BeamProfile& beam) {
  BeamProfile unit_beam = beam;
  unit_beam.peak_rabi = 1.0;
  std::vector<double> rabi = rabi_profile(positions, unit_beam);
  auto alpha_at = [&](double offset) {
    CouplingMatrix c =
        coupling_matrix(rabi, spectrum, spectrum.com_freq() + offset);
    return power_law_fit(c).alpha;
  };
  // alpha grows monotonically with the offset in the regime of interest
  // (COM-dominated flat couplings through dipolar-like decay).
  double lo = kResonanceGuard * 1.2;
  double hi = kTwoPi * 60e3;
  double alo = alpha_at(lo), ahi = alpha_at(hi);
  if (!(alo < alpha_target && alpha_target < ahi)) {
    std::ostringstream os;
    os << "alpha target " << alpha_target << " outside reachable ["
       << alo << ", " << ahi << "]";
    throw NumericalError(os.str());
  }
  for (int it = 0; it < 100; ++it) {
    double mid = 0.5 * (lo + hi);
    if (alpha_at(mid) < alpha_target)
      lo = mid;
    else
      hi = mid;
    if ((hi - lo) / hi < 1e-10) break;
  }
  return 0.5 * (lo + hi);
}

KinkPotential kink_potential(const CouplingMatrix& coupling) {
  const int n = coupling.size();
  KinkPotential out;
  out.v.assign(n - 1, 0.0);
  for (int site = 1; site <= n - 1; ++site) {
    double s = 0.0;
    for (int i = 1; i <= site; ++i)
      for (int jj = site + 1; jj <= n; ++jj)
        s += coupling.j(i - 1, jj - 1);
    out.v[site - 1] = 2.0 * s;
  }
  out.zero_offset = out.v[KinkPotential::center_site(n) - 1];
  for (double& x : out.v) x -= out.zero_offset;
  return out;
}

double spin_flip_energy(const CouplingMatrix& coupling, int i) {
  const int n = coupling.size();
  if (i < 1 || i > n) throw ConfigError("ion index out of range");
  return 2.0 * coupling.j.row(i - 1).sum();  // diagonal is zero
}

double excitation_gap(const CouplingMatrix& coupling, int n, int i) {
  const int nn = coupling.size();
  if (n < 1 || n > nn - 1) throw ConfigError("kink site out of range");
  if (i < 1 || i > nn) throw ConfigError("ion index out of range");
  if (i == n || i == n + 1)
    throw ConfigError(
        "flipping ion n or n+1 moves the kink rather than creating kinks");
  // Flipping ion i <= n in |n> (ions 1..n aligned +, n+1..N aligned -):
  // bonds from i to the + block flip from aligned to anti-aligned (+2J each),
  // bonds to the - block flip the other way (-2J each). Mirror for i > n+1.
  double s = 0.0;
  if (i < n) {
    for (int jj = 1; jj <= n; ++jj)
      if (jj != i) s += coupling.j(i - 1, jj - 1);
    for (int jj = n + 1; jj <= nn; ++jj) s -= coupling.j(i - 1, jj - 1);
  } else {
    for (int jj = n + 1; jj <= nn; ++jj)
      if (jj != i) s += coupling.j(i - 1, jj - 1);
    for (int jj = 1; jj <= n; ++jj) s -= coupling.j(i - 1, jj - 1);
  }
  return 2.0 * s;
}

namespace {

PowerLawFit fit_pairs(const CouplingMatrix& coupling, int i_min, int i_max) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int m = 0;
  for (int i = i_min; i <= i_max; ++i) {
    for (int jj = i + 1; jj <= i_max; ++jj) {
      double val = coupling.j(i - 1, jj - 1);
      if (!(val > 0.0)) {
        std::ostringstream os;
        os << "non-positive coupling J(" << i << "," << jj
           << ") in power-law fit";
        throw NumericalError(os.str());
      }
      double x = std::log(static_cast<double>(jj - i));
      double y = std::log(val);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
      ++m;
    }
  }
  if (m < 2) throw ConfigError("need at least 2 pairs to fit");
  double denom = m * sxx - sx * sx;
  if (std::abs(denom) < 1e-30)
    throw NumericalError("degenerate power-law fit (all pairs same distance)");
  double slope = (m * sxy - sx * sy) / denom;
  double intercept = (sy - slope * sx) / m;

  PowerLawFit fit;
  fit.alpha = -slope;
  fit.j0 = std::exp(intercept);
  double ss = 0.0;
  for (int i = i_min; i <= i_max; ++i) {
    for (int jj = i + 1; jj <= i_max; ++jj) {
      double x = std::log(static_cast<double>(jj - i));
      double r = std::log(coupling.j(i - 1, jj - 1)) - (intercept + slope * x);
      ss += r * r;
    }
  }
  fit.residual = std::sqrt(ss / m);
  return fit;
}

}  // namespace

PowerLawFit power_law_fit(const CouplingMatrix& coupling) {
  if (coupling.size() < 3) throw ConfigError("need N >= 3 for a power-law fit");
  return fit_pairs(coupling, 1, coupling.size());
}

PowerLawFit power_law_fit_subset(const CouplingMatrix& coupling, int i_min,
                                 int i_max) {
  if (i_min < 1 || i_max > coupling.size() || i_max - i_min < 2)
    throw ConfigError("invalid subset range for power-law fit");
  return fit_pairs(coupling, i_min, i_max);
}

CouplingMatrix power_law_matrix(int n_ions, double j0, double alpha,
                                double g) {
  if (n_ions < 2) throw ConfigError("need N >= 2");
  CouplingMatrix out;
  out.g = g;
  out.j = Eigen::MatrixXd::Zero(n_ions, n_ions);
  for (int i = 0; i < n_ions; ++i)
    for (int jj = i + 1; jj < n_ions; ++jj) {
      double val = j0 / std::pow(static_cast<double>(jj - i), alpha);
      out.j(i, jj) = val;
      out.j(jj, i) = val;
    }
  return out;
}

}  // namespace kinksim
