#include "opecsim/simulator.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace opecsim {

void SimConfig::validate() const {
  if (links < 1) {
    throw std::invalid_argument("link count must be at least 1");
  }
  if (horizon < 1) {
    throw std::invalid_argument("horizon must be at least 1 slot");
  }
  if (arrivals.empty()) {
    throw std::invalid_argument("arrival distribution is missing");
  }
  if (link_states.size() != static_cast<std::size_t>(links)) {
    throw std::invalid_argument(
        "expected " + std::to_string(links) + " link distributions, got " +
        std::to_string(link_states.size()));
  }
  for (std::size_t i = 0; i < link_states.size(); ++i) {
    if (link_states[i].empty()) {
      throw std::invalid_argument("link" + std::to_string(i + 1) +
                                  " distribution is missing");
    }
  }
  energy.validate();
  if (!std::isfinite(v) || v < 0.0) {
    throw std::invalid_argument("V must be >= 0");
  }
  if (initial_queue < 0) {
    throw std::invalid_argument("q0 must be >= 0");
  }
  if (!std::isfinite(initial_virtual_queue) || initial_virtual_queue < 0.0) {
    throw std::invalid_argument("z0 must be >= 0 and finite");
  }
}

std::int64_t queue_update(std::int64_t queue, std::int64_t capacity,
                          std::int64_t arrivals) {
  const std::int64_t drained = queue > capacity ? queue - capacity : 0;
  return drained + arrivals;
}

double virtual_queue_update(double level, double excess) {
  const double next = level + excess;
  return next > 0.0 ? next : 0.0;
}

Metrics run(const SimConfig& cfg, Policy& policy, const SlotObserver& observer) {
  cfg.validate();

  RandomStream arrival_rng(cfg.seed, "arrivals");
  std::vector<RandomStream> link_rngs;
  link_rngs.reserve(static_cast<std::size_t>(cfg.links));
  for (int link = 1; link <= cfg.links; ++link) {
    link_rngs.emplace_back(cfg.seed, "link-" + std::to_string(link));
  }

  std::int64_t queue = cfg.initial_queue;
  double virtual_queue = cfg.initial_virtual_queue;
  LinkStateVector states(static_cast<std::size_t>(cfg.links), 0);

  Metrics m;
  for (std::uint64_t t = 0; t < cfg.horizon; ++t) {
    for (std::size_t i = 0; i < states.size(); ++i) {
      states[i] = cfg.link_states[i].sample(link_rngs[i]);
    }
    const std::int64_t arrived = cfg.arrivals.sample(arrival_rng);

    const Decision decision = policy.decide({queue, virtual_queue}, states);
    const SlotOutcome out = slot_outcome(decision, states, cfg.energy);

    m.sum_queue += queue;
    m.sum_reward += out.reward;
    m.sum_energy += out.energy;
    m.sum_capacity += out.capacity;
    m.sum_arrivals += arrived;

    if (observer) {
      observer(SlotRecord{t, queue, virtual_queue, decision, out, arrived,
                          std::span<const std::int64_t>(states)});
    }

    queue = queue_update(queue, out.capacity, arrived);
    virtual_queue = virtual_queue_update(virtual_queue, out.energy_excess);
    assert(queue >= 0);
    assert(virtual_queue >= 0.0);
  }

  m.slots = cfg.horizon;
  m.final_queue = queue;
  m.final_virtual_queue = virtual_queue;
  return m;
}

namespace {

std::string g9(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.9g", x);
  return buffer;
}

}  // namespace

SlotObserver make_trace_writer(std::ostream& out, std::uint64_t every) {
  if (every < 1) {
    throw std::invalid_argument("trace interval must be at least 1");
  }
  out << "t,Q,Z,decision,b,p,r\n";
  return [&out, every](const SlotRecord& rec) {
    if (rec.slot % every != 0) return;
    out << rec.slot << ',' << rec.queue << ',' << g9(rec.virtual_queue) << ','
        << decision_name(rec.decision) << ',' << rec.outcome.capacity << ','
        << g9(rec.outcome.energy) << ',' << rec.outcome.reward << '\n';
  };
}

StabilityReport stability_report(const Metrics& m, double energy_budget) {
  if (m.slots == 0) {
    throw std::invalid_argument("metrics cover zero slots");
  }
  const double t = static_cast<double>(m.slots);
  return StabilityReport{
      static_cast<double>(m.final_queue) / t,
      m.final_virtual_queue / t,
      m.avg_energy() <= energy_budget,
  };
}

}  // namespace opecsim
