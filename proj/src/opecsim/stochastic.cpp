#include "opecsim/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

namespace opecsim {

namespace {

constexpr std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ull;
  }
  return hash;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::string_view stream_id)
    : engine_(splitmix64(splitmix64(master_seed) ^ fnv1a64(stream_id))) {}

std::uint64_t RandomStream::next_u64() { return engine_(); }

double RandomStream::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

DiscreteDistribution::DiscreteDistribution(std::vector<std::int64_t> support,
                                           std::vector<double> probabilities)
    : support_(std::move(support)), probs_(std::move(probabilities)) {
  if (support_.empty()) {
    throw std::invalid_argument("distribution support must not be empty");
  }
  if (support_.size() != probs_.size()) {
    throw std::invalid_argument(
        "distribution has " + std::to_string(support_.size()) +
        " support values but " + std::to_string(probs_.size()) +
        " probabilities");
  }
  std::unordered_set<std::int64_t> seen;
  for (std::int64_t value : support_) {
    if (value < 0) {
      throw std::invalid_argument("support value " + std::to_string(value) +
                                  " is negative");
    }
    if (!seen.insert(value).second) {
      throw std::invalid_argument("support value " + std::to_string(value) +
                                  " appears more than once");
    }
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) {
      throw std::invalid_argument("probabilities must be non-negative and finite");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    char buffer[96];
    std::snprintf(buffer, sizeof(buffer),
                  "probabilities sum to %.9g, expected 1 within 1e-9", total);
    throw std::invalid_argument(buffer);
  }
  cumulative_.reserve(probs_.size());
  double running = 0.0;
  for (double p : probs_) {
    running += p;
    cumulative_.push_back(running);
  }
}

std::int64_t DiscreteDistribution::sample(RandomStream& rng) const {
  if (support_.empty()) {
    throw std::invalid_argument("cannot sample from an empty distribution");
  }
  const double u = rng.next_uniform();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;  // cumulative sum may round below 1
  return support_[static_cast<std::size_t>(it - cumulative_.begin())];
}

double DiscreteDistribution::mean() const {
  if (support_.empty()) {
    throw std::invalid_argument("cannot take the mean of an empty distribution");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    acc += static_cast<double>(support_[i]) * probs_[i];
  }
  return acc;
}

}  // namespace opecsim
