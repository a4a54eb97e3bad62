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

#include "kinksim/full_spin.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>

#include "kinksim/constants.hpp"
#include "kinksim/errors.hpp"
#include "kinksim/rng.hpp"

namespace kinksim {

namespace {

constexpr std::complex<double> kImag(0.0, 1.0);

// exp(-i angle sz / 2) on ion `ion` (1-based), sz flips the x-basis bit.
void apply_rz(Eigen::VectorXcd& psi, int n_ions, int ion, double angle) {
  if (ion < 1 || ion > n_ions || angle == 0.0) return;
  const size_t bit = size_t(1) << (ion - 1);
  const double c = std::cos(angle / 2.0);
  const std::complex<double> ms = -kImag * std::sin(angle / 2.0);
  const size_t dim = psi.size();
  for (size_t b = 0; b < dim; ++b) {
    if (b & bit) continue;
    const std::complex<double> v0 = psi[b];
    const std::complex<double> v1 = psi[b | bit];
    psi[b] = c * v0 + ms * v1;
    psi[b | bit] = ms * v0 + c * v1;
  }
}

}  // namespace

FullHamiltonian FullHamiltonian::build(const CouplingMatrix& coupling,
                                       int cap) {
  const int n = coupling.size();
  if (n < 2) throw ConfigError("full Hamiltonian needs at least 2 ions");
  if (n > cap) {
    throw ConfigError("full-register size " + std::to_string(n) +
                      " exceeds cap " + std::to_string(cap));
  }
  FullHamiltonian h;
  h.n_ = n;
  h.g_ = coupling.g;
  const size_t dim = size_t(1) << n;
  h.diag_.resize(Eigen::Index(dim));

  // Row sums with sign pattern are built incrementally: clearing the lowest
  // set bit relates D[b] to an already computed entry, so the whole diagonal
  // costs O(2^N * N).
  double e0 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e0 -= coupling.j(i, j);
  h.diag_[0] = e0;
  for (size_t b = 1; b < dim; ++b) {
    const int l = std::countr_zero(b);
    const size_t base = b & (b - 1);
    // Flipping ion l+1 from |+> to |-> negates every term it touches.
    double delta = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == l) continue;
      const double s = (base >> j) & 1u ? -1.0 : 1.0;
      delta += 2.0 * coupling.j(l, j) * s;
    }
    h.diag_[Eigen::Index(b)] = h.diag_[Eigen::Index(base)] + delta;
  }
  return h;
}

void FullHamiltonian::apply(const Eigen::VectorXcd& in,
                            Eigen::VectorXcd& out) const {
  const size_t dim = size_t(1) << n_;
  out = diag_.cast<std::complex<double>>().cwiseProduct(in);
  for (int i = 0; i < n_; ++i) {
    const size_t bit = size_t(1) << i;
    for (size_t b = 0; b < dim; b += 2 * bit) {
      for (size_t k = b; k < b + bit; ++k) {
        out[k] += g_ * in[k | bit];
        out[k | bit] += g_ * in[k];
      }
    }
  }
}

Eigen::MatrixXcd FullHamiltonian::dense() const {
  if (n_ > 12) throw ConfigError("dense full Hamiltonian limited to N <= 12");
  const size_t dim = size_t(1) << n_;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (size_t b = 0; b < dim; ++b) {
    h(b, b) = diag_[Eigen::Index(b)];
    for (int i = 0; i < n_; ++i) h(b ^ (size_t(1) << i), b) += g_;
  }
  return h;
}

std::vector<double> NoiseModel::detection_profile(int n_ions) const {
  std::vector<double> eps(size_t(n_ions), detect_center);
  if (!enabled) {
    std::fill(eps.begin(), eps.end(), 0.0);
    return eps;
  }
  if (n_ions == 1) return eps;
  const double mid = (n_ions + 1) / 2.0;
  const double half = (n_ions - 1) / 2.0;
  for (int i = 1; i <= n_ions; ++i) {
    const double x = std::abs(i - mid) / half;
    eps[size_t(i - 1)] = detect_center + (detect_edge - detect_center) * x;
  }
  return eps;
}

Eigen::VectorXcd prepare_kink_state(int n_ions, int n0,
                                    std::optional<double> phi,
                                    const NoiseModel& noise) {
  if (n_ions < 2 || n_ions > 21)
    throw ConfigError("prepare_kink_state: N out of range");
  const int max_n0 = phi ? n_ions - 2 : n_ions - 1;
  if (n0 < 1 || n0 > max_n0)
    throw ConfigError("prepare_kink_state: kink site out of range");

  const size_t dim = size_t(1) << n_ions;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index(dim));
  if (phi) {
    const double inv = 1.0 / std::sqrt(2.0);
    psi[kink_state_index(n_ions, n0)] = inv;
    psi[kink_state_index(n_ions, n0 + 1)] =
        inv * std::exp(kImag * (*phi));
  } else {
    psi[kink_state_index(n_ions, n0)] = 1.0;
  }

  if (noise.enabled) {
    int final_ion;
    double final_angle;
    if (phi) {
      final_ion = n0 + 1;
      final_angle = std::fmod(*phi, kTwoPi);
      if (final_angle < 0.0) final_angle += kTwoPi;
    } else {
      final_ion = n0;
      final_angle = kPi;
    }
    apply_rz(psi, n_ions, final_ion - 1, final_angle * noise.crosstalk_left);
    apply_rz(psi, n_ions, final_ion + 1, final_angle * noise.crosstalk_right);
  }
  return psi;
}

SingleKinkProjection single_kink_projection(const Eigen::VectorXcd& psi,
                                            int n_ions) {
  if (n_ions < 2) throw ConfigError("single_kink_projection: N < 2");
  SingleKinkProjection out;
  out.p.resize(n_ions - 1);
  double total = 0.0;
  for (int n = 1; n <= n_ions - 1; ++n) {
    const double w = std::norm(psi[kink_state_index(n_ions, n)]);
    out.p[n - 1] = w;
    total += w;
  }
  if (total <= 0.0)
    throw NumericalError("single-kink weight vanished; cannot renormalize");
  out.p /= total;
  out.leakage = 1.0 - total / psi.squaredNorm();
  return out;
}

KrylovStats evolve_full(const FullHamiltonian& h, Eigen::VectorXcd& psi,
                        double t, double tol) {
  if (psi.size() != Eigen::Index(h.dim()))
    throw ConfigError("evolve_full: state dimension mismatch");
  KrylovOptions opts;
  opts.tol = tol;
  HermitianApply apply = [&h](const Eigen::VectorXcd& in,
                              Eigen::VectorXcd& out) { h.apply(in, out); };
  return evolve_krylov(apply, psi, t, opts);
}

int count_kinks(uint32_t bits, int n_ions) {
  const uint32_t mask = (n_ions >= 32) ? ~0u : ((1u << (n_ions - 1)) - 1u);
  return std::popcount((bits ^ (bits >> 1)) & mask);
}

MeasurementRecord sample_x_basis(const Eigen::VectorXcd& psi, int n_ions,
                                 long shots, uint64_t seed,
                                 const NoiseModel& noise) {
  if (shots <= 0) throw ConfigError("sample_x_basis: shots must be positive");
  const size_t dim = size_t(1) << n_ions;
  if (psi.size() != Eigen::Index(dim))
    throw ConfigError("sample_x_basis: state dimension mismatch");

  std::vector<double> cdf(dim);
  double acc = 0.0;
  for (size_t b = 0; b < dim; ++b) {
    acc += std::norm(psi[Eigen::Index(b)]);
    cdf[b] = acc;
  }
  if (acc <= 0.0) throw NumericalError("sample_x_basis: zero-norm state");
  for (auto& c : cdf) c /= acc;
  cdf.back() = 1.0;

  const std::vector<double> eps = noise.detection_profile(n_ions);

  MeasurementRecord rec;
  rec.n_ions = n_ions;
  rec.shots = shots;
  rec.seed = seed;
  rec.noise = noise;
  rec.bitstrings.reserve(size_t(shots));
  rec.kink_counts.reserve(size_t(shots));
  for (long s = 0; s < shots; ++s) {
    const double u = uniform_double(seed, uint64_t(s), 0);
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    uint32_t bits = uint32_t(it - cdf.begin());
    for (int i = 0; i < n_ions; ++i) {
      if (eps[size_t(i)] <= 0.0) continue;
      const double v = uniform_double(seed, uint64_t(s), uint64_t(1 + i));
      if (v < eps[size_t(i)]) bits ^= (1u << i);
    }
    rec.bitstrings.push_back(bits);
    rec.kink_counts.push_back(count_kinks(bits, n_ions));
  }
  return rec;
}

PostSelection post_select_single_kink(const MeasurementRecord& record) {
  const int n = record.n_ions;
  if (n < 2) throw ConfigError("post_select_single_kink: N < 2");
  PostSelection out;
  out.p = Eigen::VectorXd::Zero(n - 1);
  for (size_t s = 0; s < record.bitstrings.size(); ++s) {
    if (record.kink_counts[s] != 1) continue;
    const uint32_t bits = record.bitstrings[s];
    const uint32_t flips = (bits ^ (bits >> 1)) & ((1u << (n - 1)) - 1u);
    const int wall = std::countr_zero(flips) + 1;  // wall after ion `wall`
    out.p[wall - 1] += 1.0;
    ++out.kept;
  }
  if (out.kept == 0)
    throw NumericalError("post-selection retained zero shots");
  out.p /= double(out.kept);
  out.retained_fraction = double(out.kept) / double(record.shots);
  return out;
}

SpectroscopyResult probe_spectroscopy(const CouplingMatrix& coupling,
                                      double b_p,
                                      const std::vector<double>& omega_grid,
                                      double t_probe) {
  const int n = coupling.size();
  if (n < 2 || n > 9)
    throw ConfigError("probe_spectroscopy supports 2 <= N <= 9");
  if (b_p < 0.0 || t_probe <= 0.0 || omega_grid.empty())
    throw ConfigError("probe_spectroscopy: bad probe parameters");
  if (b_p > 0.2 * coupling.jmax())
    std::fprintf(stderr,
                 "probe_spectroscopy: B_p is not small against J; "
                 "linear response reading is unreliable\n");

  const FullHamiltonian h = FullHamiltonian::build(coupling);
  const size_t dim = h.dim();
  const Eigen::MatrixXcd h0 = h.dense();

  Eigen::MatrixXcd sy_sum = Eigen::MatrixXcd::Zero(dim, dim);
  // sy|+> = -i|->, sy|-> = +i|+> in the x basis.
  for (size_t b = 0; b < dim; ++b) {
    for (int i = 0; i < n; ++i) {
      const size_t bit = size_t(1) << i;
      if (b & bit)
        sy_sum(b ^ bit, b) += kImag;
      else
        sy_sum(b ^ bit, b) -= kImag;
    }
  }

  SpectroscopyResult res;
  res.omega_p = omega_grid;
  res.b_p = b_p;
  res.t_probe = t_probe;
  res.response.resize(Eigen::Index(omega_grid.size()), n);

  const size_t start = dim - 1;  // |->^N
  for (size_t gidx = 0; gidx < omega_grid.size(); ++gidx) {
    const double wp = omega_grid[gidx];
    if (wp <= 0.0) throw ConfigError("probe_spectroscopy: omega_p <= 0");
    const double period = kTwoPi / wp;
    const double dt = period / 50.0;
    const long full = long(t_probe / dt);
    const double rem = t_probe - double(full) * dt;

    // Midpoint drive values repeat every 50 full steps; cache those
    // propagators once per grid point.
    std::vector<Eigen::MatrixXcd> step(50);
    auto propagator = [&](double t0, double w) {
      const Eigen::MatrixXcd hp =
          h0 + b_p * std::sin(wp * (t0 + w / 2.0)) * sy_sum;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hp);
      const Eigen::VectorXcd ph =
          (-kImag * w * es.eigenvalues().array()).exp();
      return Eigen::MatrixXcd(es.eigenvectors() * ph.asDiagonal() *
                              es.eigenvectors().adjoint());
    };
    for (int k = 0; k < 50 && k < full; ++k)
      step[size_t(k)] = propagator(double(k) * dt, dt);

    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index(dim));
    psi[Eigen::Index(start)] = 1.0;
    for (long k = 0; k < full; ++k) psi = step[size_t(k % 50)] * psi;
    if (rem > 1e-15 * t_probe) psi = propagator(double(full) * dt, rem) * psi;

    for (int i = 0; i < n; ++i) {
      const size_t bit = size_t(1) << i;
      double p = 0.0;
      for (size_t b = 0; b < dim; ++b)
        if (!(b & bit)) p += std::norm(psi[Eigen::Index(b)]);
      res.response(Eigen::Index(gidx), i) = p;
    }
  }
  return res;
}

std::vector<double> spectroscopy_peaks(const SpectroscopyResult& result) {
  const size_t g = result.omega_p.size();
  if (g < 3) throw ConfigError("spectroscopy_peaks: grid too small");
  std::vector<double> peaks(size_t(result.response.cols()));
  for (Eigen::Index i = 0; i < result.response.cols(); ++i) {
    Eigen::Index best = 0;
    result.response.col(i).maxCoeff(&best);
    double w = result.omega_p[size_t(best)];
    if (best > 0 && best + 1 < Eigen::Index(g)) {
      const double ym = result.response(best - 1, i);
      const double y0 = result.response(best, i);
      const double yp = result.response(best + 1, i);
      const double denom = ym - 2.0 * y0 + yp;
      if (denom < 0.0) {
        const double h = result.omega_p[size_t(best) + 1] -
                         result.omega_p[size_t(best)];
        w += 0.5 * h * (ym - yp) / denom;
      }
    }
    peaks[size_t(i)] = w;
  }
  return peaks;
}

}  // namespace kinksim
