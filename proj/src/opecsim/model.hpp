#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace opecsim {

// Per-slot packet capacities of the wireless links. Element 0 is the
// cellular link, elements 1..n-1 are WiFi links. Link numbering in names
// and config keys is 1-based: link 1 = cellular, links 2..n = WiFi.
using LinkStateVector = std::vector<std::int64_t>;

// Transmission energy costs and the long-run average budget, joules/slot.
// All three must be strictly positive and finite.
struct EnergyParams {
  double cellular_tx = 0.0;  // cost of one cellular transmission slot
  double wifi_tx = 0.0;      // cost of one WiFi transmission slot
  double avg_budget = 0.0;   // ceiling on time-average consumption

  void validate() const;
  bool operator==(const EnergyParams&) const = default;
};

// One slot's transmission decision over n links: hold the packets (delay),
// send on the cellular link, or send on a single WiFi link. The underlying
// choice vector is zero-or-one-hot by construction.
class Decision {
 public:
  enum class Kind { Delay, Cellular, Wifi };

  static Decision delay(int links);
  static Decision cellular(int links);
  static Decision wifi(int links, int link_number);  // 2 <= link_number <= links

  Kind kind() const;
  int links() const { return links_; }
  int link_number() const { return selected_; }  // 1-based; 0 when delaying
  bool transmits() const { return selected_ != 0; }

  // The binary choice vector, one entry per link.
  std::vector<int> choices() const;

  bool operator==(const Decision&) const = default;

 private:
  Decision(int links, int selected) : links_(links), selected_(selected) {}

  int links_ = 1;
  int selected_ = 0;
};

// "delay", "cellular", "wifi2", "wifi3", ...
std::string decision_name(const Decision& d);

// All n+1 admissible decisions in canonical order: delay, cellular, wifi2,
// ..., wifiN. Tie-breaking downstream relies on this order, so it is part
// of the contract.
std::vector<Decision> enumerate_decisions(int links);

// Packets servable this slot: the selected link's state, or 0 when delaying.
std::int64_t capacity(const Decision& d, const LinkStateVector& states);

// Joules charged for the decision. Charged for any transmission decision,
// even one with zero capacity or an empty queue.
double energy(const Decision& d, const EnergyParams& ep);

// One unit of incentive for delaying or sending on WiFi; cellular earns none.
int reward(const Decision& d);

// Derived per-slot quantities for one (decision, link-state) pair.
struct SlotOutcome {
  std::int64_t capacity = 0;   // b: packets servable
  double energy = 0.0;         // p: joules charged
  int reward = 0;              // r: 0 or 1
  double cost = 0.0;           // f = -r, the minimized objective
  double energy_excess = 0.0;  // y = p - avg_budget, feeds the virtual queue

  bool operator==(const SlotOutcome&) const = default;
};

SlotOutcome slot_outcome(const Decision& d, const LinkStateVector& states,
                         const EnergyParams& ep);

}  // namespace opecsim
