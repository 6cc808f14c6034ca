#include "opecsim/opecsim.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "opecsim/config.hpp"
#include "opecsim/errors.hpp"
#include "opecsim/policy.hpp"
#include "opecsim/scenario.hpp"
#include "opecsim/simulator.hpp"
#include "opecsim/sweep.hpp"

struct opecsim_scenario {
  opecsim::SimConfig config;
  std::vector<double> plan_v;               // sweep plan from the file, if any
  std::vector<std::string> plan_policies;
};

struct opecsim_metrics {
  opecsim::Metrics metrics;
  double energy_budget = 0.0;
  std::string policy;
  double v = 0.0;
};

struct opecsim_sweep {
  std::vector<opecsim::SweepRow> rows;
};

namespace {

thread_local std::string g_last_error;

void set_error(std::string message) { g_last_error = std::move(message); }

opecsim_status status_of(const std::exception& e) {
  if (const auto* cfg = dynamic_cast<const opecsim::ConfigError*>(&e)) {
    switch (cfg->kind()) {
      case opecsim::ConfigError::Kind::Io:
        return OPECSIM_ERROR_IO;
      case opecsim::ConfigError::Kind::Syntax:
        return OPECSIM_ERROR_PARSE;
      case opecsim::ConfigError::Kind::Invariant:
        return OPECSIM_ERROR_VALIDATION;
    }
  }
  if (dynamic_cast<const opecsim::UnknownPolicyError*>(&e)) {
    return OPECSIM_ERROR_UNKNOWN_POLICY;
  }
  return OPECSIM_ERROR_INVALID_ARGUMENT;
}

template <typename Fn>
opecsim_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return OPECSIM_OK;
  } catch (const std::exception& e) {
    set_error(e.what());
    return status_of(e);
  } catch (...) {
    set_error("unknown failure");
    return OPECSIM_ERROR_INVALID_ARGUMENT;
  }
}

opecsim_status require_arg(bool ok, const char* what) {
  if (ok) return OPECSIM_OK;
  set_error(std::string(what) + " must not be null");
  return OPECSIM_ERROR_INVALID_ARGUMENT;
}

const opecsim::SweepRow* row_at(const opecsim_sweep* sweep, size_t row) {
  if (!sweep || row >= sweep->rows.size()) return nullptr;
  return &sweep->rows[row];
}

std::vector<std::string> split_names(const char* csv) {
  std::vector<std::string> names;
  std::string text = csv;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    std::string name = text.substr(start, end - start);
    const auto first = name.find_first_not_of(" \t");
    const auto last = name.find_last_not_of(" \t");
    if (first != std::string::npos) {
      names.push_back(name.substr(first, last - first + 1));
    }
    start = end + 1;
  }
  return names;
}

}  // namespace

extern "C" {

const char* opecsim_version(void) { return "0.1.0"; }

const char* opecsim_status_name(opecsim_status status) {
  switch (status) {
    case OPECSIM_OK:
      return "ok";
    case OPECSIM_ERROR_INVALID_ARGUMENT:
      return "invalid argument";
    case OPECSIM_ERROR_IO:
      return "io error";
    case OPECSIM_ERROR_PARSE:
      return "parse error";
    case OPECSIM_ERROR_VALIDATION:
      return "validation error";
    case OPECSIM_ERROR_UNKNOWN_POLICY:
      return "unknown policy";
  }
  return "unknown status";
}

const char* opecsim_last_error(void) { return g_last_error.c_str(); }

const char* const* opecsim_policy_names(void) {
  static const char* const kNames[] = {"opec", "cellular", "wifi-opportunistic",
                                       "random", "delay-always", nullptr};
  return kNames;
}

opecsim_status opecsim_scenario_load(const char* path, opecsim_scenario** out) {
  if (auto rc = require_arg(path, "path"); rc != OPECSIM_OK) return rc;
  if (auto rc = require_arg(out, "out"); rc != OPECSIM_OK) return rc;
  *out = nullptr;
  return guarded([&] {
    const opecsim::LoadResult loaded = opecsim::load_config(path);
    auto scenario = std::make_unique<opecsim_scenario>();
    scenario->config = opecsim::base_config(loaded);
    if (const auto* spec = std::get_if<opecsim::SweepSpec>(&loaded)) {
      scenario->plan_v = spec->v_values;
      scenario->plan_policies = spec->policies;
    }
    *out = scenario.release();
  });
}

opecsim_status opecsim_scenario_reference(opecsim_scenario** out) {
  if (auto rc = require_arg(out, "out"); rc != OPECSIM_OK) return rc;
  *out = nullptr;
  return guarded([&] {
    auto scenario = std::make_unique<opecsim_scenario>();
    scenario->config = opecsim::reference_scenario();
    *out = scenario.release();
  });
}

void opecsim_scenario_free(opecsim_scenario* scenario) { delete scenario; }

opecsim_status opecsim_scenario_set_v(opecsim_scenario* scenario, double v) {
  if (auto rc = require_arg(scenario, "scenario"); rc != OPECSIM_OK) return rc;
  return guarded([&] {
    opecsim::SimConfig next = scenario->config;
    next.v = v;
    next.validate();
    scenario->config = next;
  });
}

opecsim_status opecsim_scenario_set_horizon(opecsim_scenario* scenario,
                                            uint64_t slots) {
  if (auto rc = require_arg(scenario, "scenario"); rc != OPECSIM_OK) return rc;
  return guarded([&] {
    opecsim::SimConfig next = scenario->config;
    next.horizon = slots;
    next.validate();
    scenario->config = next;
  });
}

opecsim_status opecsim_scenario_set_seed(opecsim_scenario* scenario,
                                         uint64_t seed) {
  if (auto rc = require_arg(scenario, "scenario"); rc != OPECSIM_OK) return rc;
  scenario->config.seed = seed;
  return OPECSIM_OK;
}

opecsim_status opecsim_scenario_set_trace_every(opecsim_scenario* scenario,
                                                uint64_t every) {
  if (auto rc = require_arg(scenario, "scenario"); rc != OPECSIM_OK) return rc;
  scenario->config.trace_every = every;
  return OPECSIM_OK;
}

uint32_t opecsim_scenario_links(const opecsim_scenario* scenario) {
  return scenario ? static_cast<uint32_t>(scenario->config.links) : 0;
}

uint64_t opecsim_scenario_horizon(const opecsim_scenario* scenario) {
  return scenario ? scenario->config.horizon : 0;
}

uint64_t opecsim_scenario_seed(const opecsim_scenario* scenario) {
  return scenario ? scenario->config.seed : 0;
}

double opecsim_scenario_v(const opecsim_scenario* scenario) {
  return scenario ? scenario->config.v : 0.0;
}

double opecsim_scenario_energy_budget(const opecsim_scenario* scenario) {
  return scenario ? scenario->config.energy.avg_budget : 0.0;
}

opecsim_status opecsim_run(const opecsim_scenario* scenario, const char* policy,
                           const char* trace_path, opecsim_metrics** out) {
  if (auto rc = require_arg(scenario, "scenario"); rc != OPECSIM_OK) return rc;
  if (auto rc = require_arg(policy, "policy"); rc != OPECSIM_OK) return rc;
  if (auto rc = require_arg(out, "out"); rc != OPECSIM_OK) return rc;
  *out = nullptr;
  return guarded([&] {
    const opecsim::SimConfig& cfg = scenario->config;
    auto chosen =
        opecsim::make_policy(policy, opecsim::opec_params(cfg), cfg.seed);

    opecsim::Metrics metrics;
    if (trace_path) {
      std::ofstream trace(trace_path, std::ios::binary);
      if (!trace) {
        throw opecsim::ConfigError(opecsim::ConfigError::Kind::Io,
                                   std::string(trace_path) +
                                       ": cannot open for writing");
      }
      const std::uint64_t every = cfg.trace_every > 0 ? cfg.trace_every : 1;
      metrics = opecsim::run(cfg, *chosen,
                             opecsim::make_trace_writer(trace, every));
    } else {
      metrics = opecsim::run(cfg, *chosen);
    }

    auto handle = std::make_unique<opecsim_metrics>();
    handle->metrics = metrics;
    handle->energy_budget = cfg.energy.avg_budget;
    handle->policy = policy;
    handle->v = cfg.v;
    *out = handle.release();
  });
}

void opecsim_metrics_free(opecsim_metrics* metrics) { delete metrics; }

uint64_t opecsim_metrics_slots(const opecsim_metrics* metrics) {
  return metrics ? metrics->metrics.slots : 0;
}

double opecsim_metrics_avg_queue(const opecsim_metrics* metrics) {
  return metrics ? metrics->metrics.avg_queue() : 0.0;
}

double opecsim_metrics_avg_reward(const opecsim_metrics* metrics) {
  return metrics ? metrics->metrics.avg_reward() : 0.0;
}

double opecsim_metrics_avg_energy(const opecsim_metrics* metrics) {
  return metrics ? metrics->metrics.avg_energy() : 0.0;
}

double opecsim_metrics_final_queue(const opecsim_metrics* metrics) {
  return metrics ? static_cast<double>(metrics->metrics.final_queue) : 0.0;
}

double opecsim_metrics_final_virtual_queue(const opecsim_metrics* metrics) {
  return metrics ? metrics->metrics.final_virtual_queue : 0.0;
}

double opecsim_metrics_queue_growth(const opecsim_metrics* metrics) {
  if (!metrics) return 0.0;
  return opecsim::stability_report(metrics->metrics, metrics->energy_budget)
      .queue_growth;
}

double opecsim_metrics_virtual_queue_growth(const opecsim_metrics* metrics) {
  if (!metrics) return 0.0;
  return opecsim::stability_report(metrics->metrics, metrics->energy_budget)
      .virtual_queue_growth;
}

int opecsim_metrics_energy_ok(const opecsim_metrics* metrics) {
  if (!metrics) return 0;
  return opecsim::stability_report(metrics->metrics, metrics->energy_budget)
                 .energy_ok
             ? 1
             : 0;
}

opecsim_status opecsim_metrics_write_csv(const opecsim_metrics* metrics,
                                         const char* path) {
  if (auto rc = require_arg(metrics, "metrics"); rc != OPECSIM_OK) return rc;
  if (auto rc = require_arg(path, "path"); rc != OPECSIM_OK) return rc;
  return guarded([&] {
    const opecsim::StabilityReport report =
        opecsim::stability_report(metrics->metrics, metrics->energy_budget);
    const opecsim::SweepRow row{metrics->policy,
                                metrics->v,
                                metrics->metrics.avg_queue(),
                                metrics->metrics.avg_reward(),
                                metrics->metrics.avg_energy(),
                                report.queue_growth,
                                report.virtual_queue_growth,
                                report.energy_ok};
    opecsim::emit_csv({&row, 1}, path);
  });
}

opecsim_status opecsim_sweep_run(const opecsim_scenario* scenario,
                                 const char* policies, const double* v_values,
                                 size_t v_count, opecsim_sweep** out) {
  if (auto rc = require_arg(scenario, "scenario"); rc != OPECSIM_OK) return rc;
  if (auto rc = require_arg(out, "out"); rc != OPECSIM_OK) return rc;
  if (v_count > 0) {
    if (auto rc = require_arg(v_values, "v_values"); rc != OPECSIM_OK) return rc;
  }
  *out = nullptr;
  return guarded([&] {
    opecsim::SweepSpec spec;
    spec.base = scenario->config;
    if (v_count > 0) {
      spec.v_values.assign(v_values, v_values + v_count);
    } else if (!scenario->plan_v.empty()) {
      spec.v_values = scenario->plan_v;
    } else {
      spec.v_values.assign(opecsim::default_v_grid().begin(),
                           opecsim::default_v_grid().end());
    }
    if (policies) {
      spec.policies = split_names(policies);
    } else if (!scenario->plan_policies.empty()) {
      spec.policies = scenario->plan_policies;
    } else {
      spec.policies = {"opec"};
    }

    auto handle = std::make_unique<opecsim_sweep>();
    handle->rows = opecsim::sweep(spec);
    *out = handle.release();
  });
}

void opecsim_sweep_free(opecsim_sweep* sweep) { delete sweep; }

size_t opecsim_sweep_rows(const opecsim_sweep* sweep) {
  return sweep ? sweep->rows.size() : 0;
}

const char* opecsim_sweep_row_policy(const opecsim_sweep* sweep, size_t row) {
  const auto* r = row_at(sweep, row);
  return r ? r->policy.c_str() : nullptr;
}

double opecsim_sweep_row_v(const opecsim_sweep* sweep, size_t row) {
  const auto* r = row_at(sweep, row);
  return r ? r->v : 0.0;
}

double opecsim_sweep_row_avg_queue(const opecsim_sweep* sweep, size_t row) {
  const auto* r = row_at(sweep, row);
  return r ? r->avg_queue : 0.0;
}

double opecsim_sweep_row_avg_reward(const opecsim_sweep* sweep, size_t row) {
  const auto* r = row_at(sweep, row);
  return r ? r->avg_reward : 0.0;
}

double opecsim_sweep_row_avg_energy(const opecsim_sweep* sweep, size_t row) {
  const auto* r = row_at(sweep, row);
  return r ? r->avg_energy : 0.0;
}

double opecsim_sweep_row_queue_growth(const opecsim_sweep* sweep, size_t row) {
  const auto* r = row_at(sweep, row);
  return r ? r->queue_growth : 0.0;
}

double opecsim_sweep_row_virtual_queue_growth(const opecsim_sweep* sweep,
                                              size_t row) {
  const auto* r = row_at(sweep, row);
  return r ? r->virtual_queue_growth : 0.0;
}

int opecsim_sweep_row_energy_ok(const opecsim_sweep* sweep, size_t row) {
  const auto* r = row_at(sweep, row);
  return r && r->energy_ok ? 1 : 0;
}

opecsim_status opecsim_sweep_write_csv(const opecsim_sweep* sweep,
                                       const char* path) {
  if (auto rc = require_arg(sweep, "sweep"); rc != OPECSIM_OK) return rc;
  if (auto rc = require_arg(path, "path"); rc != OPECSIM_OK) return rc;
  return guarded([&] { opecsim::emit_csv(sweep->rows, path); });
}

}  // extern "C"
