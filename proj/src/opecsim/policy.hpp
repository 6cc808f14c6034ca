#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "opecsim/model.hpp"
#include "opecsim/stochastic.hpp"

namespace opecsim {

// What a policy observes at the start of a slot: the real queue backlog Q
// and the virtual queue Z that accumulates energy over-spend.
struct SchedulerState {
  std::int64_t queue = 0;
  double virtual_queue = 0.0;
};

struct OpecParams {
  double v = 0.0;  // control weight, >= 0; larger V buys reward with queue size
  EnergyParams energy;
  int links = 0;

  void validate() const;
};

// A scheduling policy: observe (Q, Z) and the link states, return a member
// of the canonical decision set. decide() is deterministic given its inputs
// plus any internal seeded stream.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string_view name() const = 0;
  virtual Decision decide(const SchedulerState& st, const LinkStateVector& s) = 0;
};

// Drift-plus-penalty score V*f - Q*b + Z*y of one candidate decision, with
// (f, b, y) taken from slot_outcome.
double opec_score(const Decision& d, const SchedulerState& st,
                  const LinkStateVector& s, const OpecParams& params);

// The OPEC rule: exhaustive minimizer of opec_score over the canonical
// decision set. The scan starts from delay and replaces only on strict
// improvement, so exact ties resolve to the earliest decision in canonical
// order (delay, cellular, wifi2, ...).
Decision opec_decide(const SchedulerState& st, const LinkStateVector& s,
                     const OpecParams& params);

class OpecPolicy final : public Policy {
 public:
  explicit OpecPolicy(OpecParams params);
  std::string_view name() const override { return "opec"; }
  Decision decide(const SchedulerState& st, const LinkStateVector& s) override;

 private:
  OpecParams params_;
  std::vector<Decision> decisions_;
};

// Never transmits. Unstable under any positive load; used to show the
// stability constraint is binding.
class DelayAlwaysPolicy final : public Policy {
 public:
  std::string_view name() const override { return "delay-always"; }
  Decision decide(const SchedulerState& st, const LinkStateVector& s) override;
};

// Transmits on the cellular link whenever backlogged and the link is up.
class CellularAlwaysPolicy final : public Policy {
 public:
  std::string_view name() const override { return "cellular"; }
  Decision decide(const SchedulerState& st, const LinkStateVector& s) override;
};

// Transmits on the highest-capacity WiFi link whenever backlogged and some
// WiFi link is up (lowest link number on ties); otherwise delays.
class WifiOpportunisticPolicy final : public Policy {
 public:
  std::string_view name() const override { return "wifi-opportunistic"; }
  Decision decide(const SchedulerState& st, const LinkStateVector& s) override;
};

// Uniformly random member of the decision set, from a dedicated stream.
class RandomPolicy final : public Policy {
 public:
  RandomPolicy(int links, RandomStream stream);
  std::string_view name() const override { return "random"; }
  Decision decide(const SchedulerState& st, const LinkStateVector& s) override;

 private:
  std::vector<Decision> decisions_;
  RandomStream stream_;
};

struct UnknownPolicyError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Names accepted by make_policy.
std::span<const std::string_view> policy_names();

// Builds a policy by name ("opec", "cellular", "wifi-opportunistic",
// "random", "delay-always"). The random baseline draws from a "policy"
// stream derived from master_seed. Throws UnknownPolicyError otherwise.
std::unique_ptr<Policy> make_policy(std::string_view name,
                                    const OpecParams& params,
                                    std::uint64_t master_seed);

}  // namespace opecsim
