#pragma once

#include "opecsim/simulator.hpp"

namespace opecsim {

// Built-in two-link reference scenario: a slow, almost-always-available
// cellular link plus one fast, intermittent WiFi link, with IID arrivals
// at 2.1 packets/slot and an average energy budget of 0.8 J/slot. Mirrors
// configs/reference.cfg.
SimConfig reference_scenario();

}  // namespace opecsim
