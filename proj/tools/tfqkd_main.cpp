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

// Command-line front end: `rate` for a single operating point, `scan` for a
// rate-vs-distance curve file, `compare` for per-protocol reach summaries.
// Talks to the library exclusively through the C API.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tfqkd/tfqkd.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct ConfigDeleter {
  void operator()(tfqkd_config* c) const { tfqkd_config_free(c); }
};
struct CurveDeleter {
  void operator()(tfqkd_curve* c) const { tfqkd_curve_free(c); }
};
using ConfigPtr = std::unique_ptr<tfqkd_config, ConfigDeleter>;
using CurvePtr = std::unique_ptr<tfqkd_curve, CurveDeleter>;

struct CliError {
  int exit_code;
  std::string message;
};

int exit_code_for(tfqkd_status st) {
  return st == TFQKD_ERR_IO ? kExitIo : kExitConfig;
}

void check(tfqkd_status st) {
  if (st != TFQKD_OK) throw CliError{exit_code_for(st), tfqkd_last_error()};
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::string format;
  std::string asymmetry;
  std::string edz;
  std::optional<int> k;
  bool bound_with_detector = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--config", flags->config_path, "configuration file (key = value lines)");
  cmd->add_option("--out", flags->out_path, "output path ('-' for stdout)");
  cmd->add_option("--format", flags->format, "output format: csv or json");
  cmd->add_option("--k", flags->k, "largest number of B steps to include (0-2)");
  cmd->add_option("--asymmetry", flags->asymmetry,
                  "Alice-Charlie share of the total distance, in (0,1)");
  cmd->add_option("--edz", flags->edz, "Z-basis misalignment probability");
  cmd->add_flag("--bound-with-detector", flags->bound_with_detector,
                "fold detector efficiency into the repeaterless bound");
}

ConfigPtr build_config(const CommonFlags& flags) {
  ConfigPtr cfg(tfqkd_config_new());
  if (!cfg) throw CliError{kExitConfig, "out of memory"};
  if (!flags.config_path.empty()) {
    check(tfqkd_config_load_file(cfg.get(), flags.config_path.c_str()));
  }
  if (!flags.out_path.empty()) {
    check(tfqkd_config_set(cfg.get(), "output.path", flags.out_path.c_str()));
  }
  if (!flags.format.empty()) {
    check(tfqkd_config_set(cfg.get(), "output.format", flags.format.c_str()));
  }
  if (flags.k) {
    check(tfqkd_config_set(cfg.get(), "analysis.k_max",
                           std::to_string(*flags.k).c_str()));
  }
  if (!flags.asymmetry.empty()) {
    check(tfqkd_config_set(cfg.get(), "sweep.asymmetry_ratio", flags.asymmetry.c_str()));
  }
  if (!flags.edz.empty()) {
    check(tfqkd_config_set(cfg.get(), "params.e_dz", flags.edz.c_str()));
  }
  if (flags.bound_with_detector) {
    check(tfqkd_config_set(cfg.get(), "bound.include_detector_efficiency", "true"));
  }
  check(tfqkd_config_validate(cfg.get()));
  return cfg;
}

void print_kv(const char* key, double v) {
  if (std::isnan(v)) return;  // protocol not selected
  std::cout << key << " = " << fmt(v) << "\n";
}

int cmd_rate(const CommonFlags& flags, const std::string& distance) {
  ConfigPtr cfg = build_config(flags);
  if (!distance.empty()) {
    check(tfqkd_config_set(cfg.get(), "sweep.distances_km", distance.c_str()));
  }
  tfqkd_point_report r{};
  check(tfqkd_rate_point(cfg.get(), &r));
  print_kv("distance_km", r.distance_km);
  print_kv("total_loss_db", r.total_loss_db);
  print_kv("p1.mu_opt", r.p1_mu_opt);
  print_kv("p1.q_z", r.p1_q_z);
  print_kv("p1.e_z", r.p1_e_z);
  print_kv("p1.e_x", r.p1_e_x);
  print_kv("p1.rate_oneway", r.p1_rate_oneway);
  print_kv("p1.rate_k1", r.p1_rate_k1);
  print_kv("p1.rate_k2", r.p1_rate_k2);
  print_kv("p2.mu_opt", r.p2_mu_opt);
  print_kv("p2.q_z", r.p2_q_z);
  print_kv("p2.e_z", r.p2_e_z);
  print_kv("p2.e_x_upper", r.p2_e_x_upper);
  print_kv("p2.rate", r.p2_rate);
  print_kv("plob", r.plob);
  return kExitOk;
}

CurvePtr run_sweep(const tfqkd_config* cfg) {
  tfqkd_curve* raw = nullptr;
  check(tfqkd_sweep_run(cfg, &raw));
  return CurvePtr(raw);
}

int cmd_scan(const CommonFlags& flags) {
  ConfigPtr cfg = build_config(flags);
  CurvePtr curve = run_sweep(cfg.get());

  tfqkd_format format = TFQKD_FORMAT_CSV;
  check(tfqkd_config_format(cfg.get(), &format));
  char path_buf[4096];
  check(tfqkd_config_output_path(cfg.get(), path_buf, sizeof(path_buf)));
  const std::string path(path_buf);

  if (path == "-" || path.empty()) {
    size_t needed = 0;
    check(tfqkd_curve_to_string(curve.get(), format, nullptr, 0, &needed));
    std::string text(needed, '\0');
    check(tfqkd_curve_to_string(curve.get(), format, text.data(), text.size(), &needed));
    text.resize(needed - 1);  // drop the terminator
    std::cout << text;
  } else {
    check(tfqkd_curve_write(curve.get(), path.c_str(), format));
  }
  return kExitOk;
}

int cmd_compare(const CommonFlags& flags) {
  ConfigPtr cfg = build_config(flags);
  CurvePtr curve = run_sweep(cfg.get());
  const size_t n = tfqkd_curve_size(curve.get());
  std::vector<tfqkd_curve_point> rows(n);
  for (size_t i = 0; i < n; ++i) {
    check(tfqkd_curve_point_at(curve.get(), i, &rows[i]));
  }

  struct Column {
    const char* name;
    double tfqkd_curve_point::* member;
  };
  const Column columns[] = {
      {"cat-state-oneway", &tfqkd_curve_point::rate_p1_oneway},
      {"cat-state-k1", &tfqkd_curve_point::rate_p1_k1},
      {"cat-state-k2", &tfqkd_curve_point::rate_p1_k2},
      {"phase-randomized", &tfqkd_curve_point::rate_p2},
  };
  for (const Column& col : columns) {
    bool selected = false;
    std::optional<double> max_positive;
    std::optional<double> crossing;
    for (const auto& row : rows) {
      const double rate = row.*(col.member);
      if (std::isnan(rate)) continue;
      selected = true;
      if (rate > 0.0) max_positive = row.distance_km;
      if (!crossing && !std::isnan(row.plob) && rate > row.plob) {
        crossing = row.distance_km;
      }
    }
    if (!selected) continue;
    std::cout << col.name << ".max_positive_km = "
              << (max_positive ? fmt(*max_positive) : "none") << "\n";
    std::cout << col.name << ".plob_crossing_km = "
              << (crossing ? fmt(*crossing) : "none") << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent-state twin-field QKD rate calculator"};
  app.require_subcommand(1);

  CommonFlags rate_flags, scan_flags, compare_flags;
  std::string rate_distance;

  CLI::App* rate = app.add_subcommand("rate", "report one operating point");
  add_common_flags(rate, &rate_flags);
  rate->add_option("--distance", rate_distance, "total Alice-Bob distance in km");

  CLI::App* scan = app.add_subcommand("scan", "write a rate-vs-distance curve");
  add_common_flags(scan, &scan_flags);

  CLI::App* compare = app.add_subcommand("compare", "summarize per-protocol reach");
  add_common_flags(compare, &compare_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (rate->parsed()) return cmd_rate(rate_flags, rate_distance);
    if (scan->parsed()) return cmd_scan(scan_flags);
    if (compare->parsed()) return cmd_compare(compare_flags);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  }
  return kExitConfig;
}
