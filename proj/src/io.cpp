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

#include "kinksim/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kinksim/errors.hpp"

namespace kinksim {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& raw) {
  try {
    size_t used = 0;
    const double v = std::stod(raw, &used);
    if (used != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + raw +
                      "' as a number");
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

Config Config::from_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key");
    if (!cfg.kv_.emplace(key, value).second)
      throw ConfigError("config: duplicate key '" + key + "'");
  }
  return cfg;
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : parse_double(key, it->second);
}

long Config::get_long(const std::string& key, long fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    size_t used = 0;
    const long v = std::stol(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" +
                      it->second + "' as an integer");
  }
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  std::string v = it->second;
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  throw ConfigError("config key '" + key + "': cannot parse '" + it->second +
                    "' as a boolean");
}

std::vector<double> Config::get_double_list(
    const std::string& key, std::vector<double> fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  std::vector<double> out;
  std::istringstream in(it->second);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok = trim(tok);
    if (tok.empty())
      throw ConfigError("config key '" + key + "': empty list element");
    out.push_back(parse_double(key, tok));
  }
  if (out.empty())
    throw ConfigError("config key '" + key + "': empty list");
  return out;
}

void Config::check_known_keys(const std::vector<std::string>& allowed) const {
  for (const auto& [key, value] : kv_) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError("unknown config key '" + key + "'");
  }
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NumericalError("cannot open for writing: " + path);
  for (const auto& c : table.comments) out << "# " << c << "\n";
  for (size_t i = 0; i < table.header.size(); ++i)
    out << (i ? "," : "") << table.header[i];
  out << "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw NumericalError("csv row width mismatch writing " + path);
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  if (!out) throw NumericalError("write failed: " + path);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NumericalError("cannot open for reading: " + path);
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("# ", 0) == 0) {
      table.comments.push_back(line.substr(2));
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    if (!have_header) {
      table.header = cells;
      have_header = true;
    } else {
      table.rows.push_back(cells);
    }
  }
  return table;
}

void write_measurement_record(const std::string& path,
                              const MeasurementRecord& record) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NumericalError("cannot open for writing: " + path);
  nlohmann::ordered_json header;
  header["n_ions"] = record.n_ions;
  header["shots"] = record.shots;
  header["seed"] = record.seed;
  header["noise"] = {{"enabled", record.noise.enabled},
                     {"detect_center", record.noise.detect_center},
                     {"detect_edge", record.noise.detect_edge},
                     {"crosstalk_left", record.noise.crosstalk_left},
                     {"crosstalk_right", record.noise.crosstalk_right}};
  out << header.dump() << "\n";
  std::string bits(size_t(record.n_ions), '0');
  for (const uint32_t b : record.bitstrings) {
    for (int i = 0; i < record.n_ions; ++i)
      bits[size_t(i)] = (b >> i) & 1u ? '1' : '0';
    out << bits << "\n";
  }
  if (!out) throw NumericalError("write failed: " + path);
}

MeasurementRecord read_measurement_record(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NumericalError("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw NumericalError("empty measurement record: " + path);
  MeasurementRecord rec;
  try {
    const auto header = nlohmann::json::parse(line);
    rec.n_ions = header.at("n_ions").get<int>();
    rec.shots = header.at("shots").get<long>();
    rec.seed = header.at("seed").get<uint64_t>();
    const auto& noise = header.at("noise");
    rec.noise.enabled = noise.at("enabled").get<bool>();
    rec.noise.detect_center = noise.at("detect_center").get<double>();
    rec.noise.detect_edge = noise.at("detect_edge").get<double>();
    rec.noise.crosstalk_left = noise.at("crosstalk_left").get<double>();
    rec.noise.crosstalk_right = noise.at("crosstalk_right").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw NumericalError("bad measurement record header in " + path + ": " +
                         e.what());
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (int(line.size()) != rec.n_ions)
      throw NumericalError("bitstring length mismatch in " + path);
    uint32_t b = 0;
    for (int i = 0; i < rec.n_ions; ++i) {
      if (line[size_t(i)] == '1')
        b |= (1u << i);
      else if (line[size_t(i)] != '0')
        throw NumericalError("bad bitstring character in " + path);
    }
    rec.bitstrings.push_back(b);
    rec.kink_counts.push_back(count_kinks(b, rec.n_ions));
  }
  if (long(rec.bitstrings.size()) != rec.shots)
    throw NumericalError("shot count mismatch in " + path);
  return rec;
}

uint64_t fnv1a_hash(const std::string& text) {
  uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace kinksim
