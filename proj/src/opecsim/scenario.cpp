#include "opecsim/scenario.hpp"

namespace opecsim {

SimConfig reference_scenario() {
  SimConfig cfg;
  cfg.links = 2;
  cfg.horizon = 1'000'000;
  cfg.seed = kDefaultSeed;
  cfg.arrivals = DiscreteDistribution({0, 2, 3}, {0.2, 0.3, 0.5});
  cfg.link_states = {
      DiscreteDistribution({0, 1, 2}, {0.1, 0.2, 0.7}),
      DiscreteDistribution({0, 2, 4, 10, 20}, {0.7, 0.05, 0.05, 0.1, 0.1}),
  };
  cfg.energy = EnergyParams{1.15, 1.1, 0.8};
  cfg.v = 200.0;
  cfg.initial_queue = 0;
  cfg.initial_virtual_queue = 0.0;
  cfg.trace_every = 0;
  return cfg;
}

}  // namespace opecsim
