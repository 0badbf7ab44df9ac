// Copyright 2026 The tfqkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TFQKD_CONFIG_HPP
#define TFQKD_CONFIG_HPP

#include <map>
#include <optional>
#include <string>

#include "optimize.hpp"

namespace tfqkd {

/// A config problem attributable to one key. what() always names the key.
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& key, const std::string& message)
      : std::runtime_error(key + ": " + message), key(key) {}
  std::string key;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses a flat "key = value" document: one pair per line, '#' comments,
/// blank lines ignored. Keys use dotted sections (channel.beta_db_per_km).
std::map<std::string, std::string> parse_kv_text(const std::string& text);
std::map<std::string, std::string> read_kv_file(const std::string& path);

/// Run configuration of the CLI: a SweepSpec plus output controls. Defaults
/// reproduce the reference simulation setup (0.16 dB/km fiber, 85% detector
/// efficiency, 1e-7 dark counts, f = 1.16, decoy levels 0.02/0.1, 1 GHz
/// repetition, symmetric 0-600 km sweep at 3% misalignment).
struct RunConfig {
  enum class Format { kCsv, kJson };
  enum class Units { kPerPulse, kPerSecond };

  // sweep range; an explicit distance list overrides it
  double start_km = 0.0;
  double stop_km = 600.0;
  double step_km = 10.0;
  std::optional<std::vector<double>> explicit_distances_km;

  SweepSpec sweep;  // distances_km filled by to_sweep_spec()
  int k_max = 2;    // drops cat-state-k variants above this k
  std::string output_path = "-";
  Format format = Format::kCsv;
  Units units = Units::kPerPulse;
  std::optional<std::string> gains_file;

  /// Applies one key-value pair; throws ConfigError for unknown keys or
  /// unparseable values.
  void set(const std::string& key, const std::string& value);
  void apply(const std::map<std::string, std::string>& kv);

  /// Range-checks every field, naming the offending key in the error.
  void validate() const;

  /// Final sweep description: builds the distance list, filters protocols by
  /// k_max, loads an external gains file when configured.
  SweepSpec to_sweep_spec() const;
};

}  // namespace tfqkd

#endif  // TFQKD_CONFIG_HPP
