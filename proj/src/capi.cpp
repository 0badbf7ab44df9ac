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

#include "tfqkd/tfqkd.h"

#include <cstring>
#include <string>

#include "config.hpp"
#include "curve_io.hpp"
#include "decoy.hpp"
#include "keyrate.hpp"
#include "optimize.hpp"

struct tfqkd_config {
  tfqkd::RunConfig cfg;
};

struct tfqkd_curve {
  std::vector<tfqkd::CurvePoint> rows;
};

namespace {

thread_local std::string g_last_error;

tfqkd_status fail(tfqkd_status code, const char* message) {
  g_last_error = message;
  return code;
}

// Runs fn, translating C++ error types onto the status enum.
template <typename Fn>
tfqkd_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return TFQKD_OK;
  } catch (const tfqkd::constraint_error& e) {
    return fail(TFQKD_ERR_CONSTRAINT, e.what());
  } catch (const tfqkd::ConfigError& e) {
    return fail(TFQKD_ERR_CONFIG, e.what());
  } catch (const tfqkd::IoError& e) {
    return fail(TFQKD_ERR_IO, e.what());
  } catch (const std::domain_error& e) {
    return fail(TFQKD_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(TFQKD_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(TFQKD_ERR_INTERNAL, e.what());
  }
}

bool null_args(std::initializer_list<const void*> ptrs) {
  for (const void* p : ptrs) {
    if (p == nullptr) return true;
  }
  return false;
}

tfqkd_status null_arg_error() {
  return fail(TFQKD_ERR_INVALID_ARGUMENT, "null pointer argument");
}

tfqkd::ChannelParams to_channel(const tfqkd_channel_params& c) {
  return tfqkd::ChannelParams(c.beta_db_per_km, c.dist_ac_km, c.dist_bc_km,
                              c.detector_efficiency, c.dark_count_prob);
}

tfqkd_observables to_c(const tfqkd::Observables& o) {
  return {o.q_z,         o.e_z,        o.e_x,        o.q_z_correct,
          o.q_z_error,   o.q_x_correct, o.q_x_error, o.degenerate ? 1 : 0};
}

tfqkd_rate_result to_c(const tfqkd::RateResult& r) {
  return {r.rate, r.raw_rate, r.k_bsteps, to_c(r.observables_after)};
}

tfqkd_curve_point to_c(const tfqkd::CurvePoint& p) {
  return {p.distance_km, p.total_loss_db, p.rate_p1_oneway, p.rate_p1_k1,
          p.rate_p1_k2,  p.rate_p2,       p.plob,           p.mu_opt_p1,
          p.mu_opt_p2};
}

tfqkd_status copy_string(const std::string& s, char* buf, size_t buflen,
                         size_t* needed) {
  if (needed != nullptr) *needed = s.size() + 1;
  if (buf == nullptr || buflen == 0) {
    return needed != nullptr
               ? TFQKD_OK
               : fail(TFQKD_ERR_INVALID_ARGUMENT, "null output buffer");
  }
  if (s.size() + 1 > buflen) {
    return fail(TFQKD_ERR_INVALID_ARGUMENT, "output buffer too small");
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return TFQKD_OK;
}

}  // namespace

extern "C" {

const char* tfqkd_version(void) { return "0.1.0"; }

const char* tfqkd_last_error(void) { return g_last_error.c_str(); }

tfqkd_status tfqkd_binary_entropy(double x, double* out) {
  if (null_args({out})) return null_arg_error();
  return guarded([&] { *out = tfqkd::binary_entropy(x); });
}

tfqkd_status tfqkd_conditional_entropy(double e_b, double e_p, double a, double* out) {
  if (null_args({out})) return null_arg_error();
  return guarded([&] { *out = tfqkd::conditional_entropy(tfqkd::ErrorTriple(e_b, e_p, a)); });
}

tfqkd_status tfqkd_bessel_i0(double x, double* out) {
  if (null_args({out})) return null_arg_error();
  return guarded([&] { *out = tfqkd::bessel_i0(x); });
}

tfqkd_status tfqkd_binomial(int n, int k, double* out) {
  if (null_args({out})) return null_arg_error();
  return guarded([&] { *out = tfqkd::binomial(n, k); });
}

tfqkd_status tfqkd_link_efficiencies(const tfqkd_channel_params* ch, double* eta_a,
                                     double* eta_b) {
  if (null_args({ch, eta_a, eta_b})) return null_arg_error();
  return guarded([&] {
    const auto link = tfqkd::link_efficiencies(to_channel(*ch));
    *eta_a = link.eta_a;
    *eta_b = link.eta_b;
  });
}

tfqkd_status tfqkd_protocol1_observables(const tfqkd_channel_params* ch, double mu_a,
                                         double mu_b, double e_dz,
                                         tfqkd_observables* out) {
  if (null_args({ch, out})) return null_arg_error();
  return guarded([&] {
    *out = to_c(tfqkd::protocol1_observables(to_channel(*ch),
                                             tfqkd::OperatingPoint(mu_a, mu_b, e_dz)));
  });
}

tfqkd_status tfqkd_decoy_gain(const tfqkd_channel_params* ch, double nu_a, double nu_b,
                              double* out) {
  if (null_args({ch, out})) return null_arg_error();
  return guarded([&] { *out = tfqkd::decoy_gain(nu_a, nu_b, to_channel(*ch)); });
}

tfqkd_status tfqkd_yield_exact(const tfqkd_channel_params* ch, int n, int m,
                               double* out) {
  if (null_args({ch, out})) return null_arg_error();
  return guarded([&] { *out = tfqkd::yield_exact(n, m, to_channel(*ch)); });
}

tfqkd_status tfqkd_yield_upper(const tfqkd_channel_params* ch, double omega, double nu,
                               int n, int m, double* out) {
  if (null_args({ch, out})) return null_arg_error();
  return guarded([&] {
    const auto gains = tfqkd::model_gains(to_channel(*ch), omega, nu);
    *out = tfqkd::yield_upper(n, m, gains);
  });
}

tfqkd_status tfqkd_phase_error_gain_upper(const tfqkd_channel_params* ch, double omega,
                                          double nu, double mu_a, double mu_b,
                                          int n_cut, double* out) {
  if (null_args({ch, out})) return null_arg_error();
  return guarded([&] {
    const auto gains = tfqkd::model_gains(to_channel(*ch), omega, nu);
    *out = tfqkd::phase_error_gain_upper(mu_a, mu_b, gains, n_cut);
  });
}

tfqkd_status tfqkd_one_way_rate(const tfqkd_observables* obs, double f,
                                tfqkd_rate_result* out) {
  if (null_args({obs, out})) return null_arg_error();
  return guarded([&] {
    const auto o = tfqkd::Observables::from_rates(obs->q_z, obs->e_z, obs->e_x);
    *out = to_c(tfqkd::one_way_rate(o, f));
  });
}

tfqkd_status tfqkd_two_way_rate(const tfqkd_observables* obs, double f, int k,
                                tfqkd_rate_result* out) {
  if (null_args({obs, out})) return null_arg_error();
  return guarded([&] {
    const auto o = tfqkd::Observables::from_rates(obs->q_z, obs->e_z, obs->e_x);
    *out = to_c(tfqkd::two_way_rate(o, f, k));
  });
}

tfqkd_status tfqkd_lin_ideal_rate(double mu, double eta, double* out) {
  if (null_args({out})) return null_arg_error();
  return guarded([&] { *out = tfqkd::lin_ideal_rate(mu, eta); });
}

tfqkd_status tfqkd_plob_bound(double eta_total, double* out) {
  if (null_args({out})) return null_arg_error();
  return guarded([&] { *out = tfqkd::plob_bound(eta_total); });
}

tfqkd_config* tfqkd_config_new(void) {
  try {
    return new tfqkd_config{};
  } catch (...) {
    return nullptr;
  }
}

void tfqkd_config_free(tfqkd_config* cfg) { delete cfg; }

tfqkd_status tfqkd_config_load_file(tfqkd_config* cfg, const char* path) {
  if (null_args({cfg, path})) return null_arg_error();
  return guarded([&] { cfg->cfg.apply(tfqkd::read_kv_file(path)); });
}

tfqkd_status tfqkd_config_set(tfqkd_config* cfg, const char* key, const char* value) {
  if (null_args({cfg, key, value})) return null_arg_error();
  return guarded([&] { cfg->cfg.set(key, value); });
}

tfqkd_status tfqkd_config_validate(const tfqkd_config* cfg) {
  if (null_args({cfg})) return null_arg_error();
  return guarded([&] { cfg->cfg.validate(); });
}

tfqkd_status tfqkd_config_output_path(const tfqkd_config* cfg, char* buf,
                                      size_t buflen) {
  if (null_args({cfg})) return null_arg_error();
  return copy_string(cfg->cfg.output_path, buf, buflen, nullptr);
}

tfqkd_status tfqkd_config_format(const tfqkd_config* cfg, tfqkd_format* out) {
  if (null_args({cfg, out})) return null_arg_error();
  *out = cfg->cfg.format == tfqkd::RunConfig::Format::kJson ? TFQKD_FORMAT_JSON
                                                            : TFQKD_FORMAT_CSV;
  g_last_error.clear();
  return TFQKD_OK;
}

tfqkd_status tfqkd_sweep_run(const tfqkd_config* cfg, tfqkd_curve** out) {
  if (null_args({cfg, out})) return null_arg_error();
  return guarded([&] {
    auto rows = tfqkd::run_sweep(cfg->cfg.to_sweep_spec());
    *out = new tfqkd_curve{std::move(rows)};
  });
}

void tfqkd_curve_free(tfqkd_curve* curve) { delete curve; }

size_t tfqkd_curve_size(const tfqkd_curve* curve) {
  return curve == nullptr ? 0 : curve->rows.size();
}

tfqkd_status tfqkd_curve_point_at(const tfqkd_curve* curve, size_t index,
                                  tfqkd_curve_point* out) {
  if (null_args({curve, out})) return null_arg_error();
  if (index >= curve->rows.size()) {
    return fail(TFQKD_ERR_INVALID_ARGUMENT, "curve row index out of range");
  }
  *out = to_c(curve->rows[index]);
  g_last_error.clear();
  return TFQKD_OK;
}

const char* tfqkd_curve_row_error(const tfqkd_curve* curve, size_t index) {
  if (curve == nullptr || index >= curve->rows.size()) return "";
  return curve->rows[index].error.c_str();
}

tfqkd_status tfqkd_curve_write(const tfqkd_curve* curve, const char* path,
                               tfqkd_format format) {
  if (null_args({curve, path})) return null_arg_error();
  return guarded([&] {
    const std::string text = format == TFQKD_FORMAT_JSON
                                 ? tfqkd::curve_to_json(curve->rows)
                                 : tfqkd::curve_to_csv(curve->rows);
    tfqkd::write_text_file(path, text);
  });
}

tfqkd_status tfqkd_curve_to_string(const tfqkd_curve* curve, tfqkd_format format,
                                   char* buf, size_t buflen, size_t* needed) {
  if (null_args({curve})) return null_arg_error();
  std::string text;
  const tfqkd_status st = guarded([&] {
    text = format == TFQKD_FORMAT_JSON ? tfqkd::curve_to_json(curve->rows)
                                       : tfqkd::curve_to_csv(curve->rows);
  });
  if (st != TFQKD_OK) return st;
  return copy_string(text, buf, buflen, needed);
}

tfqkd_status tfqkd_curve_read_json(const char* path, tfqkd_curve** out) {
  if (null_args({path, out})) return null_arg_error();
  return guarded([&] {
    auto rows = tfqkd::curve_from_json(tfqkd::read_text_file(path));
    *out = new tfqkd_curve{std::move(rows)};
  });
}

tfqkd_status tfqkd_rate_point(const tfqkd_config* cfg, tfqkd_point_report* out) {
  if (null_args({cfg, out})) return null_arg_error();
  return guarded([&] {
    const tfqkd::SweepSpec spec = cfg->cfg.to_sweep_spec();
    if (spec.distances_km.size() != 1) {
      throw tfqkd::ConfigError("sweep.distances_km",
                               "the rate report needs exactly one distance");
    }
    const tfqkd::PointReport r = tfqkd::compute_point_report(spec);
    *out = {r.distance_km,   r.total_loss_db, r.p1_mu_opt, r.p1_q_z,
            r.p1_e_z,        r.p1_e_x,        r.p1_rate_oneway, r.p1_rate_k1,
            r.p1_rate_k2,    r.p2_mu_opt,     r.p2_q_z,    r.p2_e_z,
            r.p2_e_x_upper,  r.p2_rate,       r.plob};
  });
}

}  // extern "C"
