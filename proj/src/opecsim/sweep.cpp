#include "opecsim/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "opecsim/errors.hpp"

namespace opecsim {

std::span<const double> default_v_grid() {
  static constexpr std::array<double, 8> kGrid = {1, 5, 10, 20, 50, 100, 150, 200};
  return kGrid;
}

void SweepSpec::validate() const {
  base.validate();
  if (v_values.empty()) {
    throw std::invalid_argument("v_list must not be empty");
  }
  for (double v : v_values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("V must be >= 0");
    }
  }
  for (std::size_t i = 1; i < v_values.size(); ++i) {
    if (!(v_values[i - 1] < v_values[i])) {
      throw std::invalid_argument("v_list must be strictly increasing");
    }
  }
  if (policies.empty()) {
    throw std::invalid_argument("policies must not be empty");
  }
  for (const std::string& name : policies) {
    const auto known = policy_names();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw UnknownPolicyError("unknown policy '" + name + "' in sweep");
    }
  }
}

namespace {

SweepRow run_point(const SimConfig& base, const std::string& policy_name,
                   double v) {
  SimConfig cfg = base;
  cfg.v = v;
  cfg.trace_every = 0;
  auto policy = make_policy(policy_name, opec_params(cfg), cfg.seed);
  const Metrics m = run(cfg, *policy);
  const StabilityReport report = stability_report(m, cfg.energy.avg_budget);
  return SweepRow{policy_name,       v,
                  m.avg_queue(),     m.avg_reward(),
                  m.avg_energy(),    report.queue_growth,
                  report.virtual_queue_growth, report.energy_ok};
}

std::string g9(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.9g", x);
  return buffer;
}

}  // namespace

std::vector<SweepRow> sweep(const SweepSpec& spec) {
  spec.validate();

  struct Point {
    const std::string* policy;
    double v;
  };
  std::vector<Point> points;
  points.reserve(spec.policies.size() * spec.v_values.size());
  for (const std::string& policy : spec.policies) {
    for (double v : spec.v_values) {
      points.push_back(Point{&policy, v});
    }
  }

  std::vector<SweepRow> rows(points.size());
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::string failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      try {
        rows[i] = run_point(spec.base, *points[i].policy, points[i].v);
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mutex);
        if (failure.empty()) {
          failure = "sweep point (policy=" + *points[i].policy +
                    ", V=" + g9(points[i].v) + "): " + e.what();
        }
      }
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_workers = std::min<std::size_t>(points.size(), hw);
  std::vector<std::thread> threads;
  threads.reserve(n_workers);
  for (std::size_t i = 0; i < n_workers; ++i) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();

  if (!failure.empty()) {
    throw std::runtime_error(failure);
  }
  return rows;
}

std::string render_csv(std::span<const SweepRow> rows) {
  std::string out = "policy,V,avg_Q,avg_r,avg_p,Q_over_T,Z_over_T,energy_ok\n";
  for (const SweepRow& row : rows) {
    out += row.policy;
    out += ',';
    out += g9(row.v);
    out += ',';
    out += g9(row.avg_queue);
    out += ',';
    out += g9(row.avg_reward);
    out += ',';
    out += g9(row.avg_energy);
    out += ',';
    out += g9(row.queue_growth);
    out += ',';
    out += g9(row.virtual_queue_growth);
    out += ',';
    out += row.energy_ok ? '1' : '0';
    out += '\n';
  }
  return out;
}

void emit_csv(std::span<const SweepRow> rows, const std::filesystem::path& path) {
  if (rows.empty()) {
    throw std::invalid_argument("no rows to write");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError(ConfigError::Kind::Io,
                      path.string() + ": cannot open for writing");
  }
  out << render_csv(rows);
  out.flush();
  if (!out) {
    throw ConfigError(ConfigError::Kind::Io, path.string() + ": write failed");
  }
}

std::vector<SweepRow> parse_csv(std::istream& in) {
  std::vector<SweepRow> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::stringstream fields(line);
    std::string cell;
    std::array<std::string, 8> cells;
    std::size_t count = 0;
    while (std::getline(fields, cell, ',') && count < cells.size()) {
      cells[count++] = cell;
    }
    if (count != cells.size()) {
      throw ConfigError(ConfigError::Kind::Syntax,
                        "malformed CSV row: " + line);
    }
    SweepRow row;
    row.policy = cells[0];
    row.v = std::stod(cells[1]);
    row.avg_queue = std::stod(cells[2]);
    row.avg_reward = std::stod(cells[3]);
    row.avg_energy = std::stod(cells[4]);
    row.queue_growth = std::stod(cells[5]);
    row.virtual_queue_growth = std::stod(cells[6]);
    row.energy_ok = cells[7] == "1";
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace opecsim
