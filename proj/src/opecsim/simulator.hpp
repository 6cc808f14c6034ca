#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>

#include "opecsim/model.hpp"
#include "opecsim/policy.hpp"
#include "opecsim/stochastic.hpp"

namespace opecsim {

// Seed used when a scenario does not specify one, so bare invocations are
// reproducible.
inline constexpr std::uint64_t kDefaultSeed = 42;

// A complete description of one simulation: the random environment, the
// energy parameters, the control weight and the initial conditions.
struct SimConfig {
  int links = 0;               // n; link_states[0] is the cellular link
  std::uint64_t horizon = 0;   // T, slots
  std::uint64_t seed = kDefaultSeed;
  DiscreteDistribution arrivals;
  std::vector<DiscreteDistribution> link_states;
  EnergyParams energy;
  double v = 0.0;
  std::int64_t initial_queue = 0;
  double initial_virtual_queue = 0.0;
  std::uint64_t trace_every = 0;  // 0 = summary only

  void validate() const;
  bool operator==(const SimConfig&) const = default;
};

inline OpecParams opec_params(const SimConfig& cfg) {
  return OpecParams{cfg.v, cfg.energy, cfg.links};
}

// Running sums over a finished run. Time averages are derived on demand,
// never stored, so replays stay bit-identical.
struct Metrics {
  std::uint64_t slots = 0;
  std::int64_t sum_queue = 0;     // packet-slots
  std::int64_t sum_reward = 0;
  double sum_energy = 0.0;        // joules
  std::int64_t sum_capacity = 0;  // offered service, packets
  std::int64_t sum_arrivals = 0;  // packets
  std::int64_t final_queue = 0;
  double final_virtual_queue = 0.0;

  // Valid once slots > 0.
  double avg_queue() const { return static_cast<double>(sum_queue) / static_cast<double>(slots); }
  double avg_reward() const { return static_cast<double>(sum_reward) / static_cast<double>(slots); }
  double avg_energy() const { return sum_energy / static_cast<double>(slots); }

  bool operator==(const Metrics&) const = default;
};

// Q(t+1) = max[Q(t) - b, 0] + a. Capacity beyond the backlog is wasted.
std::int64_t queue_update(std::int64_t queue, std::int64_t capacity,
                          std::int64_t arrivals);

// Z(t+1) = max[Z(t) + y, 0].
double virtual_queue_update(double level, double excess);

// Everything observable about one slot, before the queue updates. The
// spans/references alias loop-internal state and must not be retained.
struct SlotRecord {
  std::uint64_t slot;
  std::int64_t queue;            // Q(t)
  double virtual_queue;          // Z(t)
  const Decision& decision;
  const SlotOutcome& outcome;
  std::int64_t arrivals;         // a(t)
  std::span<const std::int64_t> link_states;  // S(t)
};

using SlotObserver = std::function<void(const SlotRecord&)>;

// Runs the time-slotted loop: sample S(t) and a(t) from per-stream RNGs,
// ask the policy for a decision, account metrics at the pre-update (Q, Z),
// then apply the queue and virtual-queue updates. Deterministic: identical
// (config, policy) inputs give bit-identical Metrics.
Metrics run(const SimConfig& cfg, Policy& policy,
            const SlotObserver& observer = {});

// Observer writing one CSV row (t,Q,Z,decision,b,p,r) every `every` slots.
// Writes the header immediately; requires every >= 1.
SlotObserver make_trace_writer(std::ostream& out, std::uint64_t every);

// Finite-horizon stability certificate: both growth rates must vanish as
// the horizon grows for the run to be mean-rate stable and within budget.
struct StabilityReport {
  double queue_growth;          // final_Q / t
  double virtual_queue_growth;  // final_Z / t
  bool energy_ok;               // avg energy <= budget
};

StabilityReport stability_report(const Metrics& m, double energy_budget);

}  // namespace opecsim
