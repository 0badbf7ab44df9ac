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

#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tfqkd {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a number, got '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  int v = 0;
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ConfigError(key, "expected an integer, got '" + value + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(key, "expected true/false, got '" + value + "'");
}

}  // namespace

std::map<std::string, std::string> parse_kv_text(const std::string& text) {
  std::map<std::string, std::string> kv;
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
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno),
                        "expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(lineno), "empty key");
    }
    kv[key] = value;
  }
  return kv;
}

std::map<std::string, std::string> read_kv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_kv_text(buf.str());
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "channel.beta_db_per_km") {
    sweep.beta_db_per_km = parse_double(key, value);
  } else if (key == "channel.detector_efficiency") {
    sweep.detector_efficiency = parse_double(key, value);
  } else if (key == "channel.dark_count_prob") {
    sweep.dark_count_prob = parse_double(key, value);
  } else if (key == "sweep.start_km") {
    start_km = parse_double(key, value);
  } else if (key == "sweep.stop_km") {
    stop_km = parse_double(key, value);
  } else if (key == "sweep.step_km") {
    step_km = parse_double(key, value);
  } else if (key == "sweep.distances_km") {
    std::vector<double> ds;
    for (const auto& item : split(value, ',')) {
      if (!item.empty()) ds.push_back(parse_double(key, item));
    }
    explicit_distances_km = std::move(ds);
  } else if (key == "sweep.asymmetry_ratio") {
    sweep.asymmetry_ratio = parse_double(key, value);
  } else if (key == "sweep.protocols") {
    std::vector<SweepProtocol> ps;
    for (const auto& item : split(value, ',')) {
      if (item.empty()) continue;
      const auto p = sweep_protocol_from_name(item);
      if (!p) throw ConfigError(key, "unknown protocol '" + item + "'");
      ps.push_back(*p);
    }
    sweep.protocols = std::move(ps);
  } else if (key == "params.e_dz") {
    sweep.e_dz = parse_double(key, value);
  } else if (key == "params.error_correction_f") {
    sweep.error_correction_f = parse_double(key, value);
  } else if (key == "params.rep_rate_hz") {
    sweep.rep_rate_hz = parse_double(key, value);
  } else if (key == "decoy.omega") {
    sweep.search.decoy_omega = parse_double(key, value);
  } else if (key == "decoy.nu") {
    sweep.search.decoy_nu = parse_double(key, value);
  } else if (key == "decoy.gains_file") {
    gains_file = value;
  } else if (key == "bound.include_detector_efficiency") {
    sweep.bound_with_detector = parse_bool(key, value);
  } else if (key == "analysis.n_cut") {
    sweep.search.n_cut = parse_int(key, value);
  } else if (key == "analysis.k_max") {
    k_max = parse_int(key, value);
  } else if (key == "search.x_min") {
    sweep.search.x_min = parse_double(key, value);
  } else if (key == "search.x_max") {
    sweep.search.x_max = parse_double(key, value);
  } else if (key == "output.path") {
    output_path = value;
  } else if (key == "output.format") {
    if (value == "csv") {
      format = Format::kCsv;
    } else if (value == "json") {
      format = Format::kJson;
    } else {
      throw ConfigError(key, "expected csv or json, got '" + value + "'");
    }
  } else if (key == "output.units") {
    if (value == "per_pulse") {
      units = Units::kPerPulse;
    } else if (value == "per_second") {
      units = Units::kPerSecond;
    } else {
      throw ConfigError(key, "expected per_pulse or per_second, got '" + value + "'");
    }
  } else {
    throw ConfigError(key, "unknown configuration key");
  }
}

void RunConfig::apply(const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) set(key, value);
}

void RunConfig::validate() const {
  const auto check = [](bool ok, const char* key, const char* msg) {
    if (!ok) throw ConfigError(key, msg);
  };
  check(sweep.beta_db_per_km > 0.0, "channel.beta_db_per_km", "must be positive");
  check(sweep.detector_efficiency > 0.0 && sweep.detector_efficiency <= 1.0,
        "channel.detector_efficiency", "must lie in (0, 1]");
  check(sweep.dark_count_prob >= 0.0 && sweep.dark_count_prob <= 1.0,
        "channel.dark_count_prob", "must lie in [0, 1]");
  check(sweep.asymmetry_ratio > 0.0 && sweep.asymmetry_ratio < 1.0,
        "sweep.asymmetry_ratio", "must lie in (0, 1)");
  check(!sweep.protocols.empty(), "sweep.protocols", "must select at least one protocol");
  check(sweep.e_dz >= 0.0 && sweep.e_dz <= 0.5, "params.e_dz", "must lie in [0, 0.5]");
  check(sweep.error_correction_f >= 1.0, "params.error_correction_f", "must be >= 1");
  check(sweep.rep_rate_hz > 0.0, "params.rep_rate_hz", "must be positive");
  check(sweep.search.decoy_omega > 0.0, "decoy.omega", "must be positive");
  check(sweep.search.decoy_nu > sweep.search.decoy_omega, "decoy.nu",
        "must exceed decoy.omega");
  check(sweep.search.n_cut >= 2, "analysis.n_cut", "must be >= 2");
  check(k_max >= 0 && k_max <= 2, "analysis.k_max", "must lie in [0, 2]");
  check(sweep.search.x_min > 0.0, "search.x_min", "must be positive");
  check(sweep.search.x_max > sweep.search.x_min, "search.x_max",
        "must exceed search.x_min");
  if (explicit_distances_km) {
    const auto& ds = *explicit_distances_km;
    check(!ds.empty(), "sweep.distances_km", "must list at least one distance");
    for (size_t i = 0; i < ds.size(); ++i) {
      check(ds[i] >= 0.0, "sweep.distances_km", "distances must be nonnegative");
      check(i == 0 || ds[i] > ds[i - 1], "sweep.distances_km",
            "distances must be strictly increasing");
    }
  } else {
    check(start_km >= 0.0, "sweep.start_km", "must be nonnegative");
    check(stop_km >= start_km, "sweep.stop_km", "must be >= sweep.start_km");
    check(step_km > 0.0, "sweep.step_km", "must be positive");
  }
}

SweepSpec RunConfig::to_sweep_spec() const {
  validate();
  SweepSpec out = sweep;
  out.rates_per_second = (units == Units::kPerSecond);

  if (explicit_distances_km) {
    out.distances_km = *explicit_distances_km;
  } else {
    out.distances_km.clear();
    // index-based stepping keeps the grid free of accumulated rounding
    const int n = static_cast<int>(std::floor((stop_km - start_km) / step_km + 1e-9)) + 1;
    for (int i = 0; i < n; ++i) out.distances_km.push_back(start_km + i * step_km);
  }

  std::vector<SweepProtocol> kept;
  for (const SweepProtocol p : out.protocols) {
    if ((p == SweepProtocol::kCatK1 && k_max < 1) ||
        (p == SweepProtocol::kCatK2 && k_max < 2)) {
      continue;
    }
    kept.push_back(p);
  }
  if (kept.empty()) {
    throw ConfigError("analysis.k_max", "filters out every selected protocol");
  }
  out.protocols = std::move(kept);

  if (gains_file) {
    try {
      out.external_gains = intensities_from_kv(read_kv_file(*gains_file));
    } catch (const IoError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("decoy.gains_file", e.what());
    }
  }
  return out;
}

}  // namespace tfqkd
