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

#ifndef KINKSIM_KRYLOV_HPP
#define KINKSIM_KRYLOV_HPP

#include <functional>

#include <Eigen/Dense>

namespace kinksim {

// Applies y = H x for a Hermitian H; y is pre-sized.
using HermitianApply =
    std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>;

struct KrylovOptions {
  double tol = 1e-8;      // total error budget for the whole interval
  int max_dim = 30;       // Lanczos subspace dimension per step
  double min_step = 1e-9; // fraction of total t below which we give up
};

struct KrylovStats {
  int steps = 0;
  int matvecs = 0;
  double error_estimate = 0.0;  // accumulated local estimates
};

// In-place psi <- exp(-i H t) psi with adaptive Lanczos stepping (full
// reorthogonalization). The per-step error estimate is the standard
// residual bound beta_m * |[exp(-i T tau)]_{m,1}|; steps shrink until the
// accumulated estimate fits the budget. Throws NumericalError on step
// underflow with diagnostics.
KrylovStats evolve_krylov(const HermitianApply& apply, Eigen::VectorXcd& psi,
                          double t, const KrylovOptions& options = {});

}  // namespace kinksim

#endif
