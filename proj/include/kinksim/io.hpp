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

#ifndef KINKSIM_IO_HPP
#define KINKSIM_IO_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kinksim/full_spin.hpp"

namespace kinksim {

// Shortest decimal form that round-trips; used everywhere a double is
// printed so outputs are byte-stable.
std::string format_double(double x);

// `key = value` lines, '#' comments, blank lines ignored. Duplicate keys
// and malformed lines throw ConfigError.
class Config {
 public:
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  // Comma-separated doubles.
  std::vector<double> get_double_list(const std::string& key,
                                      std::vector<double> fallback) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }
  // Throws ConfigError when a key is outside `allowed` (typo guard).
  void check_known_keys(const std::vector<std::string>& allowed) const;

 private:
  std::map<std::string, std::string> kv_;
};

struct CsvTable {
  std::vector<std::string> comments;  // emitted as leading '# ' lines
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

// One JSON header line (N, shots, seed, noise parameters), then one
// bitstring per shot: ion 1 first, '0' = |+>, '1' = |->.
void write_measurement_record(const std::string& path,
                              const MeasurementRecord& record);
MeasurementRecord read_measurement_record(const std::string& path);

// FNV-1a 64-bit, for config hashes embedded in outputs.
uint64_t fnv1a_hash(const std::string& text);

}  // namespace kinksim

#endif
