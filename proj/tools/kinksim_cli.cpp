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

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kinksim/errors.hpp"
#include "kinksim/scenario.hpp"

namespace {

using namespace kinksim;

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void cmd_modes(const ScenarioConfig& cfg, const std::string& out) {
  const Pipeline p = build_pipeline(cfg);
  CsvTable csv;
  csv.comments = {
      "n_ions=" + std::to_string(cfg.n_ions),
      "axial_freq_hz=" + format_double(p.trap.axial_freq / kTwoPi),
      "transverse_freq_hz=" + format_double(p.trap.transverse_freq / kTwoPi),
      "min_spacing_um=" + format_double(p.positions.min_spacing() * 1e6),
      "max_spacing_um=" + format_double(p.positions.max_spacing() * 1e6),
      "eta_com=" + format_double(p.modes.eta_com())};
  csv.header = {"mode_index", "freq_hz", "eta"};
  for (int i = 1; i <= cfg.n_ions; ++i)
    csv.header.push_back("b_" + std::to_string(i));
  for (int k = 0; k < p.modes.size(); ++k) {
    std::vector<std::string> row = {
        std::to_string(k + 1), format_double(p.modes.freqs[size_t(k)] / kTwoPi),
        format_double(p.modes.eta[size_t(k)])};
    for (int i = 0; i < cfg.n_ions; ++i)
      row.push_back(format_double(p.modes.vectors(i, k)));
    csv.rows.push_back(row);
  }
  write_csv(join(out, "modes.csv"), csv);
  std::cout << "wrote " << join(out, "modes.csv") << "\n";
}

void cmd_coupling(const ScenarioConfig& cfg, const std::string& out) {
  const Pipeline p = build_pipeline(cfg);
  CsvTable csv;
  csv.comments = {
      "n_ions=" + std::to_string(cfg.n_ions),
      "mu_hz=" + format_double(p.mu / kTwoPi),
      "peak_rabi_hz=" + format_double(p.beam.peak_rabi / kTwoPi),
      "jmax_hz=" + format_double(p.coupling.jmax() / kTwoPi),
      "alpha_fit=" + format_double(p.fit.alpha),
      "j0_fit_hz=" + format_double(p.fit.j0 / kTwoPi)};
  csv.header = {"i", "j", "j_hz", "distance_um"};
  for (int i = 1; i <= cfg.n_ions; ++i) {
    for (int j = i + 1; j <= cfg.n_ions; ++j) {
      const double d =
          (p.positions.z[size_t(j - 1)] - p.positions.z[size_t(i - 1)]) * 1e6;
      csv.rows.push_back({std::to_string(i), std::to_string(j),
                          format_double(p.coupling.j(i - 1, j - 1) / kTwoPi),
                          format_double(d)});
    }
  }
  write_csv(join(out, "coupling.csv"), csv);
  std::cout << "wrote " << join(out, "coupling.csv") << "\n";
}

void cmd_potential(const ScenarioConfig& cfg, const std::string& out) {
  const Pipeline p = build_pipeline(cfg);
  const std::vector<double> rabi = rabi_profile(p.positions, p.beam);
  CsvTable csv;
  csv.comments = {"n_ions=" + std::to_string(cfg.n_ions),
                  "zero_site=" +
                      std::to_string(KinkPotential::center_site(cfg.n_ions))};
  csv.header = {"mu_offset_hz", "site", "v_hz"};
  for (const double moff : cfg.mu_offsets) {
    const CouplingMatrix cm =
        coupling_matrix(rabi, p.modes, p.mu + moff, cfg.g);
    const KinkPotential pot = kink_potential(cm);
    for (int n = 1; n <= pot.sites(); ++n)
      csv.rows.push_back({format_double(moff / kTwoPi), std::to_string(n),
                          format_double(pot.v[size_t(n - 1)] / kTwoPi)});
  }
  write_csv(join(out, "potential.csv"), csv);
  std::cout << "wrote " << join(out, "potential.csv") << "\n";
}

void cmd_spectroscopy(const ScenarioConfig& c, const std::string& out) {
  const Pipeline p = build_pipeline(c);
  const std::vector<double> grid =
      spectroscopy_grid(p.coupling, c.probe_step);
  const SpectroscopyResult res =
      probe_spectroscopy(p.coupling, c.probe_b, grid, c.probe_time);
  const std::vector<double> peaks = spectroscopy_peaks(res);

  CsvTable curve;
  curve.comments = {"n_ions=" + std::to_string(c.n_ions),
                    "probe_b_hz=" + format_double(c.probe_b / kTwoPi),
                    "probe_time_s=" + format_double(c.probe_time)};
  curve.header = {"omega_p_hz", "ion", "response"};
  for (size_t kdx = 0; kdx < res.omega_p.size(); ++kdx)
    for (int i = 1; i <= c.n_ions; ++i)
      curve.rows.push_back({format_double(res.omega_p[kdx] / kTwoPi),
                            std::to_string(i),
                            format_double(res.response(Eigen::Index(kdx),
                                                       i - 1))});
  write_csv(join(out, "spectroscopy.csv"), curve);

  CsvTable pk;
  pk.comments = {"half_linewidth_hz=" +
                 format_double(res.half_linewidth() / kTwoPi)};
  pk.header = {"ion", "peak_hz", "delta_e_hz", "error_hz"};
  for (int i = 1; i <= c.n_ions; ++i) {
    const double de = spin_flip_energy(p.coupling, i);
    pk.rows.push_back(
        {std::to_string(i), format_double(peaks[size_t(i - 1)] / kTwoPi),
         format_double(de / kTwoPi),
         format_double((peaks[size_t(i - 1)] - de) / kTwoPi)});
  }
  write_csv(join(out, "spectroscopy_peaks.csv"), pk);
  std::cout << "wrote " << join(out, "spectroscopy.csv") << " and "
            << join(out, "spectroscopy_peaks.csv") << "\n";
}

void cmd_run(const ScenarioConfig& cfg, const std::string& out,
             const std::string& format, const std::string& stem) {
  if (format != "csv" && format != "json" && format != "both")
    throw ConfigError("--format must be csv, json, or both");
  const ResultTable table = run_scenario(cfg);
  if (format == "csv" || format == "both")
    emit(table, "csv", join(out, stem + ".csv"));
  if (format == "json" || format == "both")
    emit(table, "json", join(out, stem + ".json"));
  std::cout << "wrote " << join(out, stem) << ".{" << format << "}"
            << " (" << table.rows.size() << " rows)\n";
}

void cmd_compare(const ScenarioConfig& cfg, const std::string& out) {
  ScenarioConfig c = cfg;
  c.backend = "both";
  const ResultTable table = run_scenario(c);
  const DivergenceReport rep = compare_backends(table, table);
  CsvTable csv;
  csv.comments = {"max_tv=" + format_double(rep.max_tv)};
  csv.header = {"g_offset_hz", "jmax_t_over_pi", "tv", "leakage"};
  for (const auto& pt : rep.points)
    csv.rows.push_back({format_double(pt.g_offset / kTwoPi),
                        format_double(pt.t_over_pi), format_double(pt.tv),
                        format_double(pt.leakage)});
  write_csv(join(out, "divergence.csv"), csv);
  emit(table, "csv", join(out, "compare_results.csv"));
  std::cout << "wrote " << join(out, "divergence.csv") << " (max TV "
            << format_double(rep.max_tv) << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kinksim: kink dynamics on a long-range Ising ion chain"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = ".";
  std::string backend;
  std::string format = "csv";
  std::string scenario_arg;
  long long seed = -1;

  app.add_option("--config", config_path, "config file (key = value lines)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "override the RNG seed");
  app.add_option("--backend", backend,
                 "override the backend (effective|full|both)");

  auto* modes = app.add_subcommand("modes", "transverse mode table");
  auto* coupling = app.add_subcommand("coupling", "Ising coupling matrix");
  auto* potential =
      app.add_subcommand("potential", "kink potential with detuning band");
  auto* evolve =
      app.add_subcommand("evolve", "time evolution of the configured scenario");
  auto* spectroscopy =
      app.add_subcommand("spectroscopy", "probe scan and peak table");
  auto* run = app.add_subcommand("run", "run a named scenario");
  run->add_option("scenario", scenario_arg,
                  "fig2_potential|fig3_interference|fig4_directional|"
                  "spectroscopy|custom")
      ->required();
  run->add_option("--format", format, "csv|json|both");
  auto* compare =
      app.add_subcommand("compare", "effective vs full divergence report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (spectroscopy->parsed() && scenario_arg.empty())
      scenario_arg = "spectroscopy";
    ScenarioConfig cfg;
    if (!config_path.empty())
      cfg = ScenarioConfig::from_config(Config::from_file(config_path),
                                        scenario_arg);
    else if (!scenario_arg.empty()) {
      cfg.scenario = scenario_arg;
      cfg.n_ions = 0;
    }
    cfg.apply_scenario_defaults();
    if (seed >= 0) cfg.seed = uint64_t(seed);
    if (!backend.empty()) cfg.backend = backend;
    cfg.validate();

    std::filesystem::create_directories(out_dir);
    if (modes->parsed())
      cmd_modes(cfg, out_dir);
    else if (coupling->parsed())
      cmd_coupling(cfg, out_dir);
    else if (potential->parsed())
      cmd_potential(cfg, out_dir);
    else if (evolve->parsed())
      cmd_run(cfg, out_dir, "csv", "evolve");
    else if (spectroscopy->parsed())
      cmd_spectroscopy(cfg, out_dir);
    else if (run->parsed())
      cmd_run(cfg, out_dir, format, "results");
    else if (compare->parsed())
      cmd_compare(cfg, out_dir);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 3;
  }
}
