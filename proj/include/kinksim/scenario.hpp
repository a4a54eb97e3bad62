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

#ifndef KINKSIM_SCENARIO_HPP
#define KINKSIM_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "kinksim/coupling.hpp"
#include "kinksim/full_spin.hpp"
#include "kinksim/io.hpp"
#include "kinksim/kink_dynamics.hpp"
#include "kinksim/trap.hpp"

namespace kinksim {

inline constexpr const char* kCodeVersion = "1.0.0";

// Times are given on the J_max*t/pi axis and converted with the computed
// J_max; absolute seconds are recorded in outputs.
struct ScenarioConfig {
  std::string scenario = "custom";  // fig2_potential | fig3_interference |
                                    // fig4_directional | spectroscopy | custom
  int n_ions = 20;
  double g = kTwoPi * 50.0;             // rad/s
  double target_jmax = kTwoPi * 184.0;  // rad/s, on the reference chain
  std::vector<double> time_grid;        // J_max*t/pi, ascending from 0
  int n0 = 0;                           // 1-based kink site; 0 -> center
  std::optional<double> phi;            // superposition phase
  bool noise = false;
  std::vector<double> g_offsets{0.0};   // rad/s sweep (field drift band)
  std::vector<double> mu_offsets{0.0};  // rad/s sweep (laser drift band)
  long shots = 4000;                    // 0 -> exact projection, no sampling
  uint64_t seed = 1;
  std::string backend = "effective";    // effective | full | both
  std::string detuning = "calibrated";  // calibrated (alpha target) | rule
  double alpha_target = 1.3;
  int full_cap = 21;
  double krylov_tol = 1e-8;

  // Trap and beam. The axial frequency is pinned by the reference chain's
  // minimum spacing and reused when n_ions differs, as is the laser
  // intensity solved on the reference chain.
  int reference_ions = 21;
  double min_spacing = 4.7e-6;              // m
  double transverse_freq = kTwoPi * 3.16e6; // rad/s
  double beam_fwhm = 143e-6;                // m

  // Probe spectroscopy.
  double probe_b = kTwoPi * 15.0;     // rad/s
  double probe_time = 6e-3;           // s
  double probe_step = kTwoPi * 25.0;  // rad/s grid step

  // Fills scenario-specific defaults (grid, n0, phi, N) left unset.
  void apply_scenario_defaults();
  void validate() const;  // throws ConfigError

  // scenario_override, when non-empty, wins over the file's scenario key
  // and is applied before scenario defaults.
  static ScenarioConfig from_config(const Config& file,
                                    const std::string& scenario_override = "");
  std::string canonical() const;  // stable key=value serialization
  uint64_t hash() const;
};

// Probe grid spanning every spin-flip energy with 500 Hz margins.
std::vector<double> spectroscopy_grid(const CouplingMatrix& coupling,
                                      double step);

// Everything the pipeline derives before dynamics.
struct Pipeline {
  TrapConfig trap;          // for the requested n_ions
  IonPositions positions;
  ModeSpectrum modes;
  BeamProfile beam;         // peak_rabi solved on the reference chain
  double mu = 0.0;          // rad/s, shared with the reference chain
  CouplingMatrix coupling;  // J for n_ions, g carried from the config
  PowerLawFit fit;
};

Pipeline build_pipeline(const ScenarioConfig& config);

struct ResultRow {
  std::string scenario;
  std::string backend;
  std::string value_kind;  // probability | potential_hz | spin_flip_hz |
                           // mean_position | peak_hz | delta_e_hz
  double g_offset = 0.0;   // rad/s
  double mu_offset = 0.0;  // rad/s
  double t = 0.0;          // seconds
  double t_over_pi = 0.0;  // J_max*t/pi
  int site = 0;            // kink site, ion index, or 0 for scalars
  double value = 0.0;
  double leakage = 0.0;
  double retained_fraction = 1.0;
};

struct ResultTable {
  std::vector<ResultRow> rows;
  uint64_t config_hash = 0;
  uint64_t seed = 0;
  std::string code_version = kCodeVersion;
};

ResultTable run_scenario(const ScenarioConfig& config);

struct DivergencePoint {
  double g_offset = 0.0;
  double t_over_pi = 0.0;
  double tv = 0.0;       // total-variation distance between p(n) vectors
  double leakage = 0.0;  // from the full-register rows
};

struct DivergenceReport {
  std::vector<DivergencePoint> points;
  double max_tv = 0.0;
};

// Matches probability rows on (g_offset, t); throws ConfigError when the
// grids differ.
DivergenceReport compare_backends(const ResultTable& effective,
                                  const ResultTable& full);

// format: "csv" or "json". Field order is fixed; doubles use the shortest
// round-trip form, so equal tables give byte-identical files.
void emit(const ResultTable& table, const std::string& format,
          const std::string& path);

ResultTable read_result_csv(const std::string& path);

}  // namespace kinksim

#endif
