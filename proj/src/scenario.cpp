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

#include "kinksim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "kinksim/errors.hpp"

namespace kinksim {

namespace {

const std::vector<std::string> kScenarios = {
    "fig2_potential", "fig3_interference", "fig4_directional", "spectroscopy",
    "custom"};

std::string hash_hex(uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
  return buf;
}

// Independent, reproducible sampling stream per sweep point.
uint64_t shot_stream_seed(uint64_t seed, double g_offset, size_t t_index) {
  const std::string label = "g_offset=" + format_double(g_offset) +
                            ";t_index=" + std::to_string(t_index);
  return seed ^ fnv1a_hash(label);
}

std::optional<double> parse_phase(const std::string& raw) {
  if (raw.empty() || raw == "none") return std::nullopt;
  std::string s = raw;
  double sign = 1.0;
  if (s[0] == '+' || s[0] == '-') {
    if (s[0] == '-') sign = -1.0;
    s.erase(0, 1);
  }
  if (s == "pi") return sign * kPi;
  if (s == "pi/2") return sign * kPi / 2.0;
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return sign * v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse phase '" + raw +
                      "' (use radians, pi, or pi/2 with optional sign)");
  }
}

std::string phase_string(const std::optional<double>& phi) {
  return phi ? format_double(*phi) : "none";
}

}  // namespace

void ScenarioConfig::apply_scenario_defaults() {
  if (std::find(kScenarios.begin(), kScenarios.end(), scenario) ==
      kScenarios.end())
    throw ConfigError("unknown scenario '" + scenario + "'");
  if (n_ions == 0) {
    if (scenario == "fig4_directional")
      n_ions = 21;
    else if (scenario == "spectroscopy")
      n_ions = 6;
    else
      n_ions = 20;
  }
  if (scenario == "fig2_potential") {
    if (time_grid.empty()) time_grid = {0.0};
    if (mu_offsets == std::vector<double>{0.0})
      mu_offsets = {-kTwoPi * 500.0, 0.0, kTwoPi * 500.0};
  } else if (scenario == "fig3_interference") {
    if (time_grid.empty()) time_grid = {0.0, 0.31, 0.62, 1.09};
  } else if (scenario == "fig4_directional") {
    if (time_grid.empty()) time_grid = {0.0, 0.36, 0.73, 1.09};
    if (!phi) phi = kPi / 2.0;
  } else if (scenario == "spectroscopy") {
    if (time_grid.empty()) time_grid = {0.0};
  } else {
    if (time_grid.empty()) time_grid = {0.0, 0.31, 0.62, 1.09};
  }
  if (n0 == 0) n0 = KinkPotential::center_site(n_ions);
}

void ScenarioConfig::validate() const {
  if (std::find(kScenarios.begin(), kScenarios.end(), scenario) ==
      kScenarios.end())
    throw ConfigError("unknown scenario '" + scenario + "'");
  if (backend != "effective" && backend != "full" && backend != "both")
    throw ConfigError("backend must be effective, full, or both");
  if (detuning != "calibrated" && detuning != "rule")
    throw ConfigError("detuning must be calibrated or rule");
  if (n_ions < 3) throw ConfigError("n_ions must be at least 3");
  if (reference_ions < 2) throw ConfigError("reference_ions must be >= 2");
  if ((backend == "full" || backend == "both") && n_ions > full_cap)
    throw ConfigError("full backend requires n_ions <= cap " +
                      std::to_string(full_cap));
  if (scenario == "spectroscopy" && n_ions > 9)
    throw ConfigError("spectroscopy scenario supports at most 9 ions");
  if (time_grid.empty()) throw ConfigError("time grid is empty");
  if (time_grid.front() < 0.0)
    throw ConfigError("time grid values must be non-negative");
  for (size_t k = 1; k < time_grid.size(); ++k)
    if (time_grid[k] <= time_grid[k - 1])
      throw ConfigError("time grid must be strictly ascending");
  const int max_n0 = phi ? n_ions - 2 : n_ions - 1;
  if (n0 < 0 || n0 > max_n0)
    throw ConfigError("initial kink site out of range");
  if (shots < 0) throw ConfigError("shots must be >= 0");
  if (g_offsets.empty() || mu_offsets.empty())
    throw ConfigError("offset sweep lists cannot be empty");
  if (g < 0.0) throw ConfigError("g must be >= 0");
  if (target_jmax <= 0.0) throw ConfigError("target_jmax must be positive");
  if (alpha_target <= 0.2 || alpha_target >= 3.0)
    throw ConfigError("alpha_target out of the supported range (0.2, 3)");
  if (min_spacing <= 0.0 || transverse_freq <= 0.0 || beam_fwhm <= 0.0)
    throw ConfigError("trap and beam parameters must be positive");
  if (probe_b <= 0.0 || probe_time <= 0.0 || probe_step <= 0.0)
    throw ConfigError("probe parameters must be positive");
  if (krylov_tol <= 0.0) throw ConfigError("krylov_tol must be positive");
}

ScenarioConfig ScenarioConfig::from_config(const Config& file,
                                           const std::string& scenario_override) {
  file.check_known_keys(
      {"scenario", "n_ions", "g_hz", "target_jmax_hz", "time_grid", "n0",
       "phi", "noise", "g_offsets_hz", "mu_offsets_hz", "shots", "seed",
       "backend", "detuning", "alpha_target", "full_cap", "krylov_tol",
       "reference_ions", "min_spacing_um", "transverse_freq_mhz",
       "beam_fwhm_um", "probe_b_hz", "probe_time_ms", "probe_step_hz"});

  ScenarioConfig c;
  c.scenario = scenario_override.empty()
                   ? file.get_string("scenario", c.scenario)
                   : scenario_override;
  if (file.has("n_ions")) c.n_ions = int(file.get_long("n_ions", 0));
  else c.n_ions = 0;
  c.apply_scenario_defaults();

  c.g = kTwoPi * file.get_double("g_hz", c.g / kTwoPi);
  c.target_jmax =
      kTwoPi * file.get_double("target_jmax_hz", c.target_jmax / kTwoPi);
  c.time_grid = file.get_double_list("time_grid", c.time_grid);
  c.n0 = int(file.get_long("n0", c.n0));
  if (file.has("phi")) c.phi = parse_phase(file.get_string("phi", ""));
  c.noise = file.get_bool("noise", c.noise);
  if (file.has("g_offsets_hz")) {
    c.g_offsets = file.get_double_list("g_offsets_hz", {});
    for (auto& v : c.g_offsets) v *= kTwoPi;
  }
  if (file.has("mu_offsets_hz")) {
    c.mu_offsets = file.get_double_list("mu_offsets_hz", {});
    for (auto& v : c.mu_offsets) v *= kTwoPi;
  }
  c.shots = file.get_long("shots", c.shots);
  c.seed = uint64_t(file.get_long("seed", long(c.seed)));
  c.backend = file.get_string("backend", c.backend);
  c.detuning = file.get_string("detuning", c.detuning);
  c.alpha_target = file.get_double("alpha_target", c.alpha_target);
  c.full_cap = int(file.get_long("full_cap", c.full_cap));
  c.krylov_tol = file.get_double("krylov_tol", c.krylov_tol);
  c.reference_ions = int(file.get_long("reference_ions", c.reference_ions));
  c.min_spacing =
      1e-6 * file.get_double("min_spacing_um", c.min_spacing * 1e6);
  c.transverse_freq = kTwoPi * 1e6 * file.get_double(
      "transverse_freq_mhz", c.transverse_freq / kTwoPi / 1e6);
  c.beam_fwhm = 1e-6 * file.get_double("beam_fwhm_um", c.beam_fwhm * 1e6);
  c.probe_b = kTwoPi * file.get_double("probe_b_hz", c.probe_b / kTwoPi);
  c.probe_time =
      1e-3 * file.get_double("probe_time_ms", c.probe_time * 1e3);
  c.probe_step =
      kTwoPi * file.get_double("probe_step_hz", c.probe_step / kTwoPi);
  return c;
}

std::string ScenarioConfig::canonical() const {
  std::ostringstream out;
  out << "scenario=" << scenario << "\n";
  out << "n_ions=" << n_ions << "\n";
  out << "g=" << format_double(g) << "\n";
  out << "target_jmax=" << format_double(target_jmax) << "\n";
  out << "time_grid=";
  for (size_t k = 0; k < time_grid.size(); ++k)
    out << (k ? "," : "") << format_double(time_grid[k]);
  out << "\n";
  out << "n0=" << n0 << "\n";
  out << "phi=" << phase_string(phi) << "\n";
  out << "noise=" << (noise ? 1 : 0) << "\n";
  out << "g_offsets=";
  for (size_t k = 0; k < g_offsets.size(); ++k)
    out << (k ? "," : "") << format_double(g_offsets[k]);
  out << "\n";
  out << "mu_offsets=";
  for (size_t k = 0; k < mu_offsets.size(); ++k)
    out << (k ? "," : "") << format_double(mu_offsets[k]);
  out << "\n";
  out << "shots=" << shots << "\n";
  out << "seed=" << seed << "\n";
  out << "backend=" << backend << "\n";
  out << "detuning=" << detuning << "\n";
  out << "alpha_target=" << format_double(alpha_target) << "\n";
  out << "full_cap=" << full_cap << "\n";
  out << "krylov_tol=" << format_double(krylov_tol) << "\n";
  out << "reference_ions=" << reference_ions << "\n";
  out << "min_spacing=" << format_double(min_spacing) << "\n";
  out << "transverse_freq=" << format_double(transverse_freq) << "\n";
  out << "beam_fwhm=" << format_double(beam_fwhm) << "\n";
  out << "probe_b=" << format_double(probe_b) << "\n";
  out << "probe_time=" << format_double(probe_time) << "\n";
  out << "probe_step=" << format_double(probe_step) << "\n";
  return out.str();
}

uint64_t ScenarioConfig::hash() const { return fnv1a_hash(canonical()); }

std::vector<double> spectroscopy_grid(const CouplingMatrix& coupling,
                                      double step) {
  if (step <= 0.0) throw ConfigError("spectroscopy_grid: step must be > 0");
  double lo_e = 0.0, hi_e = 0.0;
  for (int i = 1; i <= coupling.size(); ++i) {
    const double e = spin_flip_energy(coupling, i);
    if (i == 1 || e < lo_e) lo_e = e;
    if (i == 1 || e > hi_e) hi_e = e;
  }
  const double lo = std::max(step, lo_e - kTwoPi * 500.0);
  const double hi = hi_e + kTwoPi * 500.0;
  std::vector<double> grid;
  for (double w = lo; w <= hi; w += step) grid.push_back(w);
  if (grid.size() < 3)
    throw NumericalError("spectroscopy_grid: grid degenerate");
  return grid;
}

Pipeline build_pipeline(const ScenarioConfig& config) {
  TrapConfig ref;
  ref.ion_count = config.reference_ions;
  ref.axial_freq =
      axial_freq_for_min_spacing(config.reference_ions, config.min_spacing);
  ref.transverse_freq = config.transverse_freq;
  ref.validate();

  const IonPositions ref_pos = solve_equilibrium(ref);
  const ModeSpectrum ref_modes =
      lamb_dicke(transverse_modes(ref_pos, ref), ref);

  Pipeline p;
  p.beam.center = 0.0;
  p.beam.fwhm = config.beam_fwhm;
  if (config.detuning == "rule") {
    p.beam.peak_rabi =
        solve_peak_rabi(config.target_jmax, ref_modes, ref_pos, p.beam);
    p.mu = detuning_rule(ref_modes, p.beam.peak_rabi);
  } else {
    p.mu = ref_modes.com_freq() +
           solve_detuning_for_alpha(config.alpha_target, ref_modes, ref_pos,
                                    p.beam);
    p.beam.peak_rabi = solve_peak_rabi_at(config.target_jmax, ref_modes,
                                          ref_pos, p.beam, p.mu);
  }

  if (config.n_ions == config.reference_ions) {
    p.trap = ref;
    p.positions = ref_pos;
    p.modes = ref_modes;
  } else {
    // Same trap and laser; only the loaded ion number changes.
    p.trap = ref;
    p.trap.ion_count = config.n_ions;
    p.positions = solve_equilibrium(p.trap);
    p.modes = lamb_dicke(transverse_modes(p.positions, p.trap), p.trap);
  }
  p.coupling = coupling_matrix(rabi_profile(p.positions, p.beam), p.modes,
                               p.mu, config.g);
  p.fit = power_law_fit(p.coupling);
  return p;
}

namespace {

void push_probability_rows(ResultTable& table, const ScenarioConfig& cfg,
                           const std::string& backend, double g_offset,
                           double t, double t_over_pi,
                           const Eigen::VectorXd& p, double leakage,
                           double retained) {
  double sum = 0.0;
  for (Eigen::Index n = 0; n < p.size(); ++n) sum += p[n];
  if (std::abs(sum - 1.0) > 1e-6)
    throw NumericalError("probability rows do not sum to 1 at t_over_pi=" +
                         format_double(t_over_pi));
  for (Eigen::Index n = 0; n < p.size(); ++n) {
    ResultRow row;
    row.scenario = cfg.scenario;
    row.backend = backend;
    row.value_kind = "probability";
    row.g_offset = g_offset;
    row.t = t;
    row.t_over_pi = t_over_pi;
    row.site = int(n) + 1;
    row.value = p[n];
    row.leakage = leakage;
    row.retained_fraction = retained;
    table.rows.push_back(row);
  }
  ResultRow mean;
  mean.scenario = cfg.scenario;
  mean.backend = backend;
  mean.value_kind = "mean_position";
  mean.g_offset = g_offset;
  mean.t = t;
  mean.t_over_pi = t_over_pi;
  mean.site = 0;
  mean.value = mean_position(p);
  mean.leakage = leakage;
  mean.retained_fraction = retained;
  table.rows.push_back(mean);
}

void run_fig2(const ScenarioConfig& cfg, const Pipeline& pipe,
              ResultTable& table) {
  const std::vector<double> rabi = rabi_profile(pipe.positions, pipe.beam);
  for (const double moff : cfg.mu_offsets) {
    const CouplingMatrix cm =
        coupling_matrix(rabi, pipe.modes, pipe.mu + moff, cfg.g);
    const KinkPotential pot = kink_potential(cm);
    for (int n = 1; n <= pot.sites(); ++n) {
      ResultRow row;
      row.scenario = cfg.scenario;
      row.backend = "model";
      row.value_kind = "potential_hz";
      row.mu_offset = moff;
      row.site = n;
      row.value = pot.v[size_t(n - 1)] / kTwoPi;
      table.rows.push_back(row);
    }
    for (int i = 1; i <= cm.size(); ++i) {
      ResultRow row;
      row.scenario = cfg.scenario;
      row.backend = "model";
      row.value_kind = "spin_flip_hz";
      row.mu_offset = moff;
      row.site = i;
      row.value = spin_flip_energy(cm, i) / kTwoPi;
      table.rows.push_back(row);
    }
  }
}

void run_spectroscopy_scenario(const ScenarioConfig& cfg,
                               const Pipeline& pipe, ResultTable& table) {
  std::vector<double> delta_e(size_t(cfg.n_ions));
  for (int i = 1; i <= cfg.n_ions; ++i)
    delta_e[size_t(i - 1)] = spin_flip_energy(pipe.coupling, i);
  const std::vector<double> grid =
      spectroscopy_grid(pipe.coupling, cfg.probe_step);

  const SpectroscopyResult res =
      probe_spectroscopy(pipe.coupling, cfg.probe_b, grid, cfg.probe_time);
  const std::vector<double> peaks = spectroscopy_peaks(res);
  for (int i = 1; i <= cfg.n_ions; ++i) {
    ResultRow peak;
    peak.scenario = cfg.scenario;
    peak.backend = "full";
    peak.value_kind = "peak_hz";
    peak.t = cfg.probe_time;
    peak.site = i;
    peak.value = peaks[size_t(i - 1)] / kTwoPi;
    table.rows.push_back(peak);
    ResultRow formula = peak;
    formula.value_kind = "delta_e_hz";
    formula.value = delta_e[size_t(i - 1)] / kTwoPi;
    table.rows.push_back(formula);
  }
}

void run_dynamics(const ScenarioConfig& cfg, const Pipeline& pipe,
                  ResultTable& table) {
  const int sites = cfg.n_ions - 1;
  const double jmax = pipe.coupling.jmax();
  std::vector<double> tsec(cfg.time_grid.size());
  for (size_t k = 0; k < cfg.time_grid.size(); ++k)
    tsec[k] = cfg.time_grid[k] * kPi / jmax;

  const bool want_eff = cfg.backend == "effective" || cfg.backend == "both";
  const bool want_full = cfg.backend == "full" || cfg.backend == "both";
  const KinkPotential pot = kink_potential(pipe.coupling);

  for (const double goff : cfg.g_offsets) {
    const double geff = cfg.g + goff;
    if (want_eff) {
      const EffectiveHamiltonian heff(pot, geff);
      const Eigen::VectorXcd psi0 =
          cfg.phi ? initial_superposition(sites, cfg.n0, *cfg.phi)
                  : initial_localized(sites, cfg.n0);
      for (size_t k = 0; k < tsec.size(); ++k) {
        const Eigen::VectorXcd psi = heff.evolve(psi0, tsec[k]);
        push_probability_rows(table, cfg, "effective", goff, tsec[k],
                              cfg.time_grid[k], kink_distribution(psi), 0.0,
                              1.0);
      }
    }
    if (want_full) {
      CouplingMatrix cm = pipe.coupling;
      cm.g = geff;
      const FullHamiltonian h = FullHamiltonian::build(cm, cfg.full_cap);
      NoiseModel nm;
      nm.enabled = cfg.noise;
      Eigen::VectorXcd psi = prepare_kink_state(cfg.n_ions, cfg.n0, cfg.phi, nm);
      double done = 0.0;
      for (size_t k = 0; k < tsec.size(); ++k) {
        if (tsec[k] > done) {
          evolve_full(h, psi, tsec[k] - done, cfg.krylov_tol);
          done = tsec[k];
        }
        const SingleKinkProjection proj =
            single_kink_projection(psi, cfg.n_ions);
        Eigen::VectorXd p;
        double retained;
        if (cfg.shots > 0) {
          const MeasurementRecord rec =
              sample_x_basis(psi, cfg.n_ions, cfg.shots,
                             shot_stream_seed(cfg.seed, goff, k), nm);
          const PostSelection ps = post_select_single_kink(rec);
          p = ps.p;
          retained = ps.retained_fraction;
        } else {
          p = proj.p;
          retained = 1.0 - proj.leakage;
        }
        push_probability_rows(table, cfg, "full", goff, tsec[k],
                              cfg.time_grid[k], p, proj.leakage, retained);
      }
    }
  }
}

}  // namespace

ResultTable run_scenario(const ScenarioConfig& config) {
  ScenarioConfig cfg = config;
  cfg.apply_scenario_defaults();
  cfg.validate();

  ResultTable table;
  table.config_hash = cfg.hash();
  table.seed = cfg.seed;

  Pipeline pipe;
  try {
    pipe = build_pipeline(cfg);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string("pipeline: ") + e.what());
  }
  try {
    if (cfg.scenario == "fig2_potential")
      run_fig2(cfg, pipe, table);
    else if (cfg.scenario == "spectroscopy")
      run_spectroscopy_scenario(cfg, pipe, table);
    else
      run_dynamics(cfg, pipe, table);
  } catch (const NumericalError& e) {
    throw NumericalError(cfg.scenario + ": " + e.what());
  }
  return table;
}

DivergenceReport compare_backends(const ResultTable& effective,
                                  const ResultTable& full) {
  // Keyed on the exact printed forms so equal grids match bitwise.
  using Key = std::string;
  auto key_of = [](const ResultRow& r) {
    return format_double(r.g_offset) + "|" + format_double(r.t_over_pi);
  };
  std::vector<Key> order;
  std::map<Key, std::vector<double>> pe, pf;
  std::map<Key, double> leak, goff, topi;
  for (const auto& r : effective.rows) {
    if (r.value_kind != "probability" || r.backend != "effective") continue;
    const Key k = key_of(r);
    if (!pe.count(k)) {
      order.push_back(k);
      goff[k] = r.g_offset;
      topi[k] = r.t_over_pi;
    }
    pe[k].push_back(r.value);
  }
  for (const auto& r : full.rows) {
    if (r.value_kind != "probability" || r.backend != "full") continue;
    const Key k = key_of(r);
    pf[k].push_back(r.value);
    leak[k] = r.leakage;
  }
  if (pe.empty() || pf.empty())
    throw ConfigError("compare_backends: missing probability rows");
  if (pe.size() != pf.size())
    throw ConfigError("compare_backends: grids differ");

  DivergenceReport rep;
  for (const Key& k : order) {
    const auto it = pf.find(k);
    if (it == pf.end())
      throw ConfigError("compare_backends: grids differ at key " + k);
    const auto& a = pe[k];
    const auto& b = it->second;
    if (a.size() != b.size())
      throw ConfigError("compare_backends: site counts differ");
    DivergencePoint pt;
    pt.g_offset = goff[k];
    pt.t_over_pi = topi[k];
    for (size_t n = 0; n < a.size(); ++n) pt.tv += std::abs(a[n] - b[n]);
    pt.tv *= 0.5;
    pt.leakage = leak[k];
    rep.max_tv = std::max(rep.max_tv, pt.tv);
    rep.points.push_back(pt);
  }
  return rep;
}

void emit(const ResultTable& table, const std::string& format,
          const std::string& path) {
  if (format == "csv") {
    CsvTable csv;
    csv.comments = {"config_hash=" + hash_hex(table.config_hash),
                    "seed=" + std::to_string(table.seed),
                    "code_version=" + table.code_version};
    csv.header = {"scenario",    "backend",        "value_kind",
                  "g_offset_hz", "mu_offset_hz",   "t_seconds",
                  "jmax_t_over_pi", "site",        "value",
                  "leakage",     "retained_fraction"};
    for (const auto& r : table.rows) {
      csv.rows.push_back({r.scenario, r.backend, r.value_kind,
                          format_double(r.g_offset / kTwoPi),
                          format_double(r.mu_offset / kTwoPi),
                          format_double(r.t), format_double(r.t_over_pi),
                          std::to_string(r.site), format_double(r.value),
                          format_double(r.leakage),
                          format_double(r.retained_fraction)});
    }
    write_csv(path, csv);
  } else if (format == "json") {
    nlohmann::ordered_json doc;
    doc["config_hash"] = hash_hex(table.config_hash);
    doc["seed"] = table.seed;
    doc["code_version"] = table.code_version;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
      nlohmann::ordered_json row;
      row["scenario"] = r.scenario;
      row["backend"] = r.backend;
      row["value_kind"] = r.value_kind;
      row["g_offset_hz"] = r.g_offset / kTwoPi;
      row["mu_offset_hz"] = r.mu_offset / kTwoPi;
      row["t_seconds"] = r.t;
      row["jmax_t_over_pi"] = r.t_over_pi;
      row["site"] = r.site;
      row["value"] = r.value;
      row["leakage"] = r.leakage;
      row["retained_fraction"] = r.retained_fraction;
      doc["rows"].push_back(row);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw NumericalError("cannot open for writing: " + path);
    out << doc.dump(2) << "\n";
    if (!out) throw NumericalError("write failed: " + path);
  } else {
    throw ConfigError("emit format must be csv or json");
  }
}

ResultTable read_result_csv(const std::string& path) {
  const CsvTable csv = read_csv(path);
  if (csv.header.size() != 11)
    throw NumericalError("unexpected result csv schema in " + path);
  ResultTable table;
  for (const auto& c : csv.comments) {
    if (c.rfind("config_hash=", 0) == 0)
      table.config_hash = std::stoull(c.substr(12), nullptr, 16);
    else if (c.rfind("seed=", 0) == 0)
      table.seed = std::stoull(c.substr(5));
    else if (c.rfind("code_version=", 0) == 0)
      table.code_version = c.substr(13);
  }
  for (const auto& cells : csv.rows) {
    if (cells.size() != 11)
      throw NumericalError("short row in result csv " + path);
    ResultRow r;
    r.scenario = cells[0];
    r.backend = cells[1];
    r.value_kind = cells[2];
    r.g_offset = kTwoPi * std::stod(cells[3]);
    r.mu_offset = kTwoPi * std::stod(cells[4]);
    r.t = std::stod(cells[5]);
    r.t_over_pi = std::stod(cells[6]);
    r.site = std::stoi(cells[7]);
    r.value = std::stod(cells[8]);
    r.leakage = std::stod(cells[9]);
    r.retained_fraction = std::stod(cells[10]);
    table.rows.push_back(r);
  }
  return table;
}

}  // namespace kinksim
