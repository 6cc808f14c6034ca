#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace opecsim {

// Deterministic seeded sample stream. A (master seed, stream id) pair
// always produces the same sequence, on any platform; distinct stream ids
// derived from one master seed give statistically independent streams, so
// changing the policy under test never perturbs the sampled environment.
//
// Single-owner mutable state: a stream may move between threads but must
// not be drawn from concurrently.
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::string_view stream_id);

  std::uint64_t next_u64();
  double next_uniform();  // [0, 1), 53-bit resolution

 private:
  std::mt19937_64 engine_;
};

// Finite-support discrete distribution over non-negative integers.
// Probabilities must be non-negative and sum to 1 within 1e-9; support
// values must be distinct. Immutable once constructed.
class DiscreteDistribution {
 public:
  static constexpr double kNormalizationTolerance = 1e-9;

  DiscreteDistribution() = default;  // empty; sample() and mean() reject
  DiscreteDistribution(std::vector<std::int64_t> support,
                       std::vector<double> probabilities);

  // Inverse-CDF draw consuming exactly one value from the stream.
  std::int64_t sample(RandomStream& rng) const;

  double mean() const;

  bool empty() const { return support_.empty(); }
  const std::vector<std::int64_t>& support() const { return support_; }
  const std::vector<double>& probabilities() const { return probs_; }

  bool operator==(const DiscreteDistribution&) const = default;

 private:
  std::vector<std::int64_t> support_;
  std::vector<double> probs_;
  std::vector<double> cumulative_;
};

}  // namespace opecsim
