#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "opecsim/scenario.hpp"
#include "opecsim/simulator.hpp"

using namespace opecsim;

namespace {

SimConfig short_reference(std::uint64_t horizon, double v) {
  SimConfig cfg = reference_scenario();
  cfg.horizon = horizon;
  cfg.v = v;
  return cfg;
}

Metrics run_named(const SimConfig& cfg, std::string_view policy_name,
                  const SlotObserver& observer = {}) {
  auto policy = make_policy(policy_name, opec_params(cfg), cfg.seed);
  return run(cfg, *policy, observer);
}

}  // namespace

TEST_CASE("queue_update applies max[Q - b, 0] + a") {
  CHECK(queue_update(5, 3, 2) == 4);
  CHECK(queue_update(2, 10, 0) == 0);
  CHECK(queue_update(0, 0, 3) == 3);
}

TEST_CASE("virtual_queue_update applies max[Z + y, 0]") {
  CHECK(virtual_queue_update(0.0, -0.8) == 0.0);
  CHECK(virtual_queue_update(1.0, 0.35) == doctest::Approx(1.35).epsilon(1e-12));
  CHECK(virtual_queue_update(0.1, -0.8) == 0.0);
}

TEST_CASE("delay-always earns full reward and grows the queue linearly") {
  const SimConfig cfg = short_reference(100000, 1.0);
  const Metrics m = run_named(cfg, "delay-always");
  CHECK(m.avg_reward() == 1.0);
  CHECK(m.avg_energy() == 0.0);
  CHECK(m.sum_capacity == 0);
  const double growth = static_cast<double>(m.final_queue) /
                        static_cast<double>(m.slots);
  CHECK(growth == doctest::Approx(2.1).epsilon(0.005));
}

TEST_CASE("no arrivals means OPEC never spends anything") {
  SimConfig cfg = short_reference(20000, 50.0);
  cfg.arrivals = DiscreteDistribution({0}, {1.0});
  const Metrics m = run_named(cfg, "opec");
  CHECK(m.sum_queue == 0);
  CHECK(m.sum_energy == 0.0);
  CHECK(m.avg_reward() == 1.0);
  CHECK(m.final_queue == 0);
  CHECK(m.final_virtual_queue == 0.0);
}

TEST_CASE("replay with identical inputs is bit-identical") {
  const SimConfig cfg = short_reference(100000, 50.0);
  const Metrics first = run_named(cfg, "opec");
  const Metrics second = run_named(cfg, "opec");
  CHECK(first == second);

  const Metrics random_first = run_named(cfg, "random");
  const Metrics random_second = run_named(cfg, "random");
  CHECK(random_first == random_second);
}

TEST_CASE("policies under the same seed see the same environment") {
  const SimConfig cfg = short_reference(5000, 50.0);
  struct Tape {
    std::vector<std::int64_t> arrivals;
    std::vector<std::int64_t> states;
  };
  auto record = [&](std::string_view policy) {
    Tape tape;
    run_named(cfg, policy, [&](const SlotRecord& rec) {
      tape.arrivals.push_back(rec.arrivals);
      tape.states.insert(tape.states.end(), rec.link_states.begin(),
                         rec.link_states.end());
    });
    return tape;
  };
  const Tape opec = record("opec");
  const Tape cellular = record("cellular");
  CHECK(opec.arrivals == cellular.arrivals);
  CHECK(opec.states == cellular.states);
}

TEST_CASE("per-slot invariants hold along the trajectory") {
  const SimConfig cfg = short_reference(10000, 20.0);
  for (const char* name : {"opec", "random"}) {
    CAPTURE(name);
    std::int64_t violations = 0;
    const Metrics m = run_named(cfg, name, [&](const SlotRecord& rec) {
      if (rec.queue < 0) ++violations;
      if (rec.virtual_queue < 0.0) ++violations;
      if (rec.outcome.cost != -static_cast<double>(rec.outcome.reward)) ++violations;
      if (rec.outcome.energy_excess !=
          rec.outcome.energy - cfg.energy.avg_budget) {
        ++violations;
      }
    });
    CHECK(violations == 0);
    CHECK(m.avg_reward() >= 0.0);
    CHECK(m.avg_reward() <= 1.0);
    CHECK(m.avg_energy() >= 0.0);
    CHECK(m.avg_energy() <= std::max(cfg.energy.cellular_tx, cfg.energy.wifi_tx));
  }
}

TEST_CASE("packet conservation: served packets never exceed offered capacity") {
  const SimConfig cfg = short_reference(50000, 10.0);
  for (const char* name : {"opec", "cellular", "wifi-opportunistic", "random",
                           "delay-always"}) {
    CAPTURE(name);
    const Metrics m = run_named(cfg, name);
    const std::int64_t served =
        m.sum_arrivals - (m.final_queue - cfg.initial_queue);
    CHECK(served >= 0);
    CHECK(served <= m.sum_capacity);
  }
}

TEST_CASE("stability report separates stable and unstable runs") {
  const SimConfig cfg = short_reference(100000, 50.0);

  SUBCASE("opec is stable and within budget") {
    const Metrics m = run_named(cfg, "opec");
    const StabilityReport report = stability_report(m, cfg.energy.avg_budget);
    CHECK(report.queue_growth < 1e-3);
    CHECK(report.virtual_queue_growth < 1e-3);
    CHECK(report.energy_ok);
  }

  SUBCASE("delay-always is flagged unstable") {
    const Metrics m = run_named(cfg, "delay-always");
    const StabilityReport report = stability_report(m, cfg.energy.avg_budget);
    CHECK(report.queue_growth == doctest::Approx(2.1).epsilon(0.005));
    CHECK(report.energy_ok);  // zero spend
  }

  SUBCASE("cellular-always blows the budget") {
    const Metrics m = run_named(cfg, "cellular");
    const StabilityReport report = stability_report(m, cfg.energy.avg_budget);
    // Saturated queue, link up 90% of slots: about 0.9 * 1.15 J/slot.
    CHECK(m.avg_energy() == doctest::Approx(1.035).epsilon(0.01));
    CHECK(m.avg_reward() == doctest::Approx(0.1).epsilon(0.1));
    CHECK(!report.energy_ok);
  }

  SUBCASE("zero-slot metrics are rejected") {
    CHECK_THROWS_AS(stability_report(Metrics{}, 0.8), std::invalid_argument);
  }
}

TEST_CASE("config validation gates the run") {
  SimConfig cfg = short_reference(0, 1.0);
  OpecPolicy policy(opec_params(cfg));
  CHECK_THROWS_WITH_AS(run(cfg, policy), doctest::Contains("horizon"),
                       std::invalid_argument);

  SimConfig bad_v = short_reference(10, -1.0);
  CHECK_THROWS_AS(bad_v.validate(), std::invalid_argument);

  SimConfig bad_links = reference_scenario();
  bad_links.link_states.pop_back();
  CHECK_THROWS_AS(bad_links.validate(), std::invalid_argument);

  SimConfig bad_q0 = short_reference(10, 1.0);
  bad_q0.initial_queue = -1;
  CHECK_THROWS_AS(bad_q0.validate(), std::invalid_argument);
}

TEST_CASE("a policy answering for the wrong network is rejected") {
  struct WrongPolicy final : Policy {
    std::string_view name() const override { return "wrong"; }
    Decision decide(const SchedulerState&, const LinkStateVector&) override {
      return Decision::delay(3);
    }
  };
  SimConfig cfg = short_reference(10, 1.0);
  WrongPolicy wrong;
  CHECK_THROWS_AS(run(cfg, wrong), std::invalid_argument);
}

TEST_CASE("trace writer emits the header and sampled rows") {
  SimConfig cfg = short_reference(10, 200.0);
  std::ostringstream out;
  OpecPolicy policy(opec_params(cfg));
  run(cfg, policy, make_trace_writer(out, 2));

  std::istringstream in(out.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 6);  // header + t = 0,2,4,6,8
  CHECK(lines[0] == "t,Q,Z,decision,b,p,r");
  // Slot 0 starts empty: OPEC delays, earns the reward, spends nothing.
  CHECK(lines[1] == "0,0,0,delay,0,0,1");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(std::count(lines[i].begin(), lines[i].end(), ',') == 6);
  }

  std::ostringstream unused;
  CHECK_THROWS_AS(make_trace_writer(unused, 0), std::invalid_argument);
}

TEST_CASE("initial conditions enter the accounting") {
  SimConfig cfg = short_reference(1, 0.0);
  cfg.initial_queue = 7;
  cfg.initial_virtual_queue = 2.5;
  const Metrics m = run_named(cfg, "delay-always");
  CHECK(m.sum_queue == 7);  // slot 0 accounts the pre-update queue
  CHECK(m.final_queue >= 0);
  // One idle slot: Z decays by the budget, clamped at zero.
  CHECK(m.final_virtual_queue ==
        doctest::Approx(std::max(0.0, 2.5 - 0.8)).epsilon(1e-12));
}
