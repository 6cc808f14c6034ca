#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "opecsim/simulator.hpp"

namespace opecsim {

// V grid used when neither the scenario file nor the caller supplies one.
std::span<const double> default_v_grid();

// A V-sweep experiment: one simulation per (policy, V) pair, every run
// against the same master seed so all points observe identical sampled
// environments.
struct SweepSpec {
  SimConfig base;
  std::vector<double> v_values;        // non-empty, >= 0, strictly increasing
  std::vector<std::string> policies;   // non-empty, known policy names

  void validate() const;
};

struct SweepRow {
  std::string policy;
  double v = 0.0;
  double avg_queue = 0.0;
  double avg_reward = 0.0;
  double avg_energy = 0.0;
  double queue_growth = 0.0;
  double virtual_queue_growth = 0.0;
  bool energy_ok = false;
};

// Runs the experiment and returns rows in (policy, V) order. Points are
// independent and execute concurrently; row order does not depend on
// completion order.
std::vector<SweepRow> sweep(const SweepSpec& spec);

// CSV with header policy,V,avg_Q,avg_r,avg_p,Q_over_T,Z_over_T,energy_ok.
// Numbers carry 9 significant digits; identical rows give identical bytes.
std::string render_csv(std::span<const SweepRow> rows);

// Writes render_csv(rows) to path. Rejects empty rows before touching the
// file; throws ConfigError(Io) when the path cannot be written.
void emit_csv(std::span<const SweepRow> rows, const std::filesystem::path& path);

// Parses a file produced by emit_csv back into rows.
std::vector<SweepRow> parse_csv(std::istream& in);

}  // namespace opecsim
