// Command-line harness over the opecsim shared library. Talks to the
// library exclusively through its C interface.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "opecsim/opecsim.h"

namespace {

struct ScenarioHandle {
  opecsim_scenario* ptr = nullptr;
  ~ScenarioHandle() { opecsim_scenario_free(ptr); }
};

struct MetricsHandle {
  opecsim_metrics* ptr = nullptr;
  ~MetricsHandle() { opecsim_metrics_free(ptr); }
};

struct SweepHandle {
  opecsim_sweep* ptr = nullptr;
  ~SweepHandle() { opecsim_sweep_free(ptr); }
};

int fail(opecsim_status status) {
  std::fprintf(stderr, "opecsim: %s: %s\n", opecsim_status_name(status),
               opecsim_last_error());
  return 1;
}

int load_scenario(const std::string& config, std::optional<double> v,
                  std::optional<std::uint64_t> slots,
                  std::optional<std::uint64_t> seed, ScenarioHandle& scenario) {
  if (auto rc = opecsim_scenario_load(config.c_str(), &scenario.ptr);
      rc != OPECSIM_OK) {
    return fail(rc);
  }
  if (v) {
    if (auto rc = opecsim_scenario_set_v(scenario.ptr, *v); rc != OPECSIM_OK) {
      return fail(rc);
    }
  }
  if (slots) {
    if (auto rc = opecsim_scenario_set_horizon(scenario.ptr, *slots);
        rc != OPECSIM_OK) {
      return fail(rc);
    }
  }
  if (seed) {
    if (auto rc = opecsim_scenario_set_seed(scenario.ptr, *seed);
        rc != OPECSIM_OK) {
      return fail(rc);
    }
  }
  return 0;
}

int run_simulate(const std::string& config, const std::string& policy,
                 std::optional<double> v, std::optional<std::uint64_t> slots,
                 std::optional<std::uint64_t> seed, const std::string& trace,
                 const std::string& out_path) {
  ScenarioHandle scenario;
  if (int rc = load_scenario(config, v, slots, seed, scenario); rc != 0) {
    return rc;
  }

  MetricsHandle metrics;
  if (auto rc = opecsim_run(scenario.ptr, policy.c_str(),
                            trace.empty() ? nullptr : trace.c_str(),
                            &metrics.ptr);
      rc != OPECSIM_OK) {
    return fail(rc);
  }

  std::printf("policy=%s V=%g slots=%llu seed=%llu\n", policy.c_str(),
              opecsim_scenario_v(scenario.ptr),
              static_cast<unsigned long long>(
                  opecsim_scenario_horizon(scenario.ptr)),
              static_cast<unsigned long long>(
                  opecsim_scenario_seed(scenario.ptr)));
  std::printf(
      "avg_Q=%.6g avg_r=%.6g avg_p=%.6g (budget %.6g)\n",
      opecsim_metrics_avg_queue(metrics.ptr),
      opecsim_metrics_avg_reward(metrics.ptr),
      opecsim_metrics_avg_energy(metrics.ptr),
      opecsim_scenario_energy_budget(scenario.ptr));
  std::printf("Q_over_T=%.6g Z_over_T=%.6g energy_ok=%s\n",
              opecsim_metrics_queue_growth(metrics.ptr),
              opecsim_metrics_virtual_queue_growth(metrics.ptr),
              opecsim_metrics_energy_ok(metrics.ptr) ? "yes" : "no");

  if (auto rc = opecsim_metrics_write_csv(metrics.ptr, out_path.c_str());
      rc != OPECSIM_OK) {
    return fail(rc);
  }
  std::printf("wrote %s\n", out_path.c_str());
  if (!trace.empty()) std::printf("trace written to %s\n", trace.c_str());
  return 0;
}

int run_sweep(const std::string& config, const std::vector<double>& v_list,
              const std::string& policies, std::optional<std::uint64_t> slots,
              std::optional<std::uint64_t> seed, const std::string& out_path) {
  ScenarioHandle scenario;
  if (int rc = load_scenario(config, std::nullopt, slots, seed, scenario);
      rc != 0) {
    return rc;
  }

  SweepHandle result;
  if (auto rc = opecsim_sweep_run(scenario.ptr,
                                  policies.empty() ? nullptr : policies.c_str(),
                                  v_list.empty() ? nullptr : v_list.data(),
                                  v_list.size(), &result.ptr);
      rc != OPECSIM_OK) {
    return fail(rc);
  }

  const size_t rows = opecsim_sweep_rows(result.ptr);
  std::printf("%-20s %8s %10s %8s %8s %10s %10s %s\n", "policy", "V", "avg_Q",
              "avg_r", "avg_p", "Q_over_T", "Z_over_T", "energy_ok");
  for (size_t i = 0; i < rows; ++i) {
    std::printf("%-20s %8g %10.4f %8.4f %8.4f %10.3g %10.3g %s\n",
                opecsim_sweep_row_policy(result.ptr, i),
                opecsim_sweep_row_v(result.ptr, i),
                opecsim_sweep_row_avg_queue(result.ptr, i),
                opecsim_sweep_row_avg_reward(result.ptr, i),
                opecsim_sweep_row_avg_energy(result.ptr, i),
                opecsim_sweep_row_queue_growth(result.ptr, i),
                opecsim_sweep_row_virtual_queue_growth(result.ptr, i),
                opecsim_sweep_row_energy_ok(result.ptr, i) ? "yes" : "no");
  }

  if (auto rc = opecsim_sweep_write_csv(result.ptr, out_path.c_str());
      rc != OPECSIM_OK) {
    return fail(rc);
  }
  std::printf("wrote %s (%zu rows)\n", out_path.c_str(), rows);
  return 0;
}

std::string policy_list() {
  std::string names;
  for (const char* const* p = opecsim_policy_names(); *p; ++p) {
    if (!names.empty()) names += ", ";
    names += *p;
  }
  return names;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incentive WiFi offloading scheduler simulator (OPEC)"};
  app.require_subcommand(1);

  std::string config;
  std::string out_path;
  std::string policy = "opec";
  std::string trace;
  std::string policies;
  std::vector<double> v_list;
  std::optional<double> v;
  std::optional<std::uint64_t> slots;
  std::optional<std::uint64_t> seed;

  CLI::App* simulate =
      app.add_subcommand("simulate", "Run one simulation and write a CSV row");
  simulate->add_option("--config", config, "Scenario file")->required();
  simulate->add_option("--v", v, "Override control weight V");
  simulate->add_option("--slots", slots, "Override horizon (slots)");
  simulate->add_option("--seed", seed, "Override master seed");
  simulate->add_option("--policy", policy, "Policy: " + policy_list());
  simulate->add_option("--trace", trace, "Write per-slot trace CSV here");
  simulate->add_option("--out", out_path, "Output CSV path")->required();

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run one simulation per (policy, V) and write the table");
  sweep->add_option("--config", config, "Scenario file")->required();
  sweep->add_option("--v-list", v_list, "Comma-separated V values")
      ->delimiter(',');
  sweep->add_option("--policies", policies,
                    "Comma-separated policies (" + policy_list() + ")");
  sweep->add_option("--slots", slots, "Override horizon (slots)");
  sweep->add_option("--seed", seed, "Override master seed");
  sweep->add_option("--out", out_path, "Output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) {
    return run_simulate(config, policy, v, slots, seed, trace, out_path);
  }
  return run_sweep(config, v_list, policies, slots, seed, out_path);
}
