#include "opecsim/policy.hpp"

#include <array>
#include <cmath>
#include <string>

namespace opecsim {

namespace {

Decision argmin_score(std::span<const Decision> candidates,
                      const SchedulerState& st, const LinkStateVector& s,
                      const OpecParams& params) {
  Decision best = candidates.front();
  double best_score = opec_score(best, st, s, params);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double score = opec_score(candidates[i], st, s, params);
    if (score < best_score) {
      best = candidates[i];
      best_score = score;
    }
  }
  return best;
}

}  // namespace

void OpecParams::validate() const {
  if (!std::isfinite(v) || v < 0.0) {
    throw std::invalid_argument("V must be >= 0 and finite");
  }
  energy.validate();
  if (links < 1) {
    throw std::invalid_argument("link count must be at least 1");
  }
}

double opec_score(const Decision& d, const SchedulerState& st,
                  const LinkStateVector& s, const OpecParams& params) {
  const SlotOutcome out = slot_outcome(d, s, params.energy);
  return params.v * out.cost -
         static_cast<double>(st.queue) * static_cast<double>(out.capacity) +
         st.virtual_queue * out.energy_excess;
}

Decision opec_decide(const SchedulerState& st, const LinkStateVector& s,
                     const OpecParams& params) {
  const auto decisions = enumerate_decisions(params.links);
  return argmin_score(decisions, st, s, params);
}

OpecPolicy::OpecPolicy(OpecParams params)
    : params_(params), decisions_(enumerate_decisions(params.links)) {
  params_.validate();
}

Decision OpecPolicy::decide(const SchedulerState& st, const LinkStateVector& s) {
  return argmin_score(decisions_, st, s, params_);
}

Decision DelayAlwaysPolicy::decide(const SchedulerState&,
                                   const LinkStateVector& s) {
  return Decision::delay(static_cast<int>(s.size()));
}

Decision CellularAlwaysPolicy::decide(const SchedulerState& st,
                                      const LinkStateVector& s) {
  const int links = static_cast<int>(s.size());
  if (st.queue > 0 && s[0] > 0) return Decision::cellular(links);
  return Decision::delay(links);
}

Decision WifiOpportunisticPolicy::decide(const SchedulerState& st,
                                         const LinkStateVector& s) {
  const int links = static_cast<int>(s.size());
  int best_link = 0;
  std::int64_t best_state = 0;
  for (int link = 2; link <= links; ++link) {
    const std::int64_t state = s[static_cast<std::size_t>(link - 1)];
    if (state > best_state) {
      best_state = state;
      best_link = link;
    }
  }
  if (st.queue > 0 && best_link != 0) return Decision::wifi(links, best_link);
  return Decision::delay(links);
}

RandomPolicy::RandomPolicy(int links, RandomStream stream)
    : decisions_(enumerate_decisions(links)), stream_(std::move(stream)) {}

Decision RandomPolicy::decide(const SchedulerState&, const LinkStateVector&) {
  auto index = static_cast<std::size_t>(stream_.next_uniform() *
                                        static_cast<double>(decisions_.size()));
  if (index >= decisions_.size()) index = decisions_.size() - 1;
  return decisions_[index];
}

std::span<const std::string_view> policy_names() {
  static constexpr std::array<std::string_view, 5> kNames = {
      "opec", "cellular", "wifi-opportunistic", "random", "delay-always"};
  return kNames;
}

std::unique_ptr<Policy> make_policy(std::string_view name,
                                    const OpecParams& params,
                                    std::uint64_t master_seed) {
  if (name == "opec") return std::make_unique<OpecPolicy>(params);
  if (name == "cellular") return std::make_unique<CellularAlwaysPolicy>();
  if (name == "wifi-opportunistic") {
    return std::make_unique<WifiOpportunisticPolicy>();
  }
  if (name == "random") {
    return std::make_unique<RandomPolicy>(params.links,
                                          RandomStream(master_seed, "policy"));
  }
  if (name == "delay-always") return std::make_unique<DelayAlwaysPolicy>();

  std::string all;
  for (std::string_view known : policy_names()) {
    if (!all.empty()) all += ", ";
    all += known;
  }
  throw UnknownPolicyError("unknown policy '" + std::string(name) +
                           "'; expected one of: " + all);
}

}  // namespace opecsim
