#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Core>

namespace subgroup {

/// Deterministic random stream. Child streams are derived from the parent
/// seed and a label, so adding a consumer never shifts another's draws.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  RandomStream split(std::string_view label) const;
  RandomStream split(std::uint64_t index) const { return RandomStream(mix(seed_ ^ mix(index))); }

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform integer in [lo, hi].
  std::size_t range(std::size_t lo, std::size_t hi);
  /// Index drawn proportionally to non-negative `weights`.
  std::size_t categorical(const Eigen::Ref<const Eigen::VectorXd>& weights);

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace subgroup
