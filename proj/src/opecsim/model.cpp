#include "opecsim/model.hpp"

#include <cmath>
#include <stdexcept>

namespace opecsim {

namespace {

void require_links(int links) {
  if (links < 1) {
    throw std::invalid_argument("link count must be at least 1, got " +
                                std::to_string(links));
  }
}

}  // namespace

void EnergyParams::validate() const {
  auto ok = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!ok(cellular_tx)) {
    throw std::invalid_argument("p_c must be strictly positive and finite");
  }
  if (!ok(wifi_tx)) {
    throw std::invalid_argument("p_w must be strictly positive and finite");
  }
  if (!ok(avg_budget)) {
    throw std::invalid_argument("p_av must be strictly positive and finite");
  }
}

Decision Decision::delay(int links) {
  require_links(links);
  return Decision(links, 0);
}

Decision Decision::cellular(int links) {
  require_links(links);
  return Decision(links, 1);
}

Decision Decision::wifi(int links, int link_number) {
  require_links(links);
  if (link_number < 2 || link_number > links) {
    throw std::invalid_argument("WiFi link number " +
                                std::to_string(link_number) +
                                " out of range 2.." + std::to_string(links));
  }
  return Decision(links, link_number);
}

Decision::Kind Decision::kind() const {
  if (selected_ == 0) return Kind::Delay;
  if (selected_ == 1) return Kind::Cellular;
  return Kind::Wifi;
}

std::vector<int> Decision::choices() const {
  std::vector<int> bits(static_cast<std::size_t>(links_), 0);
  if (selected_ != 0) bits[static_cast<std::size_t>(selected_ - 1)] = 1;
  return bits;
}

std::string decision_name(const Decision& d) {
  switch (d.kind()) {
    case Decision::Kind::Delay:
      return "delay";
    case Decision::Kind::Cellular:
      return "cellular";
    case Decision::Kind::Wifi:
      return "wifi" + std::to_string(d.link_number());
  }
  return {};
}

std::vector<Decision> enumerate_decisions(int links) {
  require_links(links);
  std::vector<Decision> out;
  out.reserve(static_cast<std::size_t>(links) + 1);
  out.push_back(Decision::delay(links));
  out.push_back(Decision::cellular(links));
  for (int link = 2; link <= links; ++link) {
    out.push_back(Decision::wifi(links, link));
  }
  return out;
}

std::int64_t capacity(const Decision& d, const LinkStateVector& states) {
  if (static_cast<std::size_t>(d.links()) != states.size()) {
    throw std::invalid_argument(
        "decision spans " + std::to_string(d.links()) +
        " links but the state vector has " + std::to_string(states.size()));
  }
  if (!d.transmits()) return 0;
  return states[static_cast<std::size_t>(d.link_number() - 1)];
}

double energy(const Decision& d, const EnergyParams& ep) {
  switch (d.kind()) {
    case Decision::Kind::Delay:
      return 0.0;
    case Decision::Kind::Cellular:
      return ep.cellular_tx;
    case Decision::Kind::Wifi:
      return ep.wifi_tx;
  }
  return 0.0;
}

int reward(const Decision& d) {
  return d.kind() == Decision::Kind::Cellular ? 0 : 1;
}

SlotOutcome slot_outcome(const Decision& d, const LinkStateVector& states,
                         const EnergyParams& ep) {
  SlotOutcome out;
  out.capacity = capacity(d, states);
  out.energy = energy(d, ep);
  out.reward = reward(d);
  out.cost = -static_cast<double>(out.reward);
  out.energy_excess = out.energy - ep.avg_budget;
  return out;
}

}  // namespace opecsim
