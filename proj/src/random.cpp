#include "subgroup/random.hpp"

#include "subgroup/error.hpp"

namespace subgroup {

std::uint64_t RandomStream::mix(std::uint64_t z) {
  // splitmix64 finalizer
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RandomStream RandomStream::split(std::string_view label) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (const char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return RandomStream(mix(seed_ ^ h));
}

std::size_t RandomStream::range(std::size_t lo, std::size_t hi) {
  if (hi <= lo) return lo;
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t v;
  do v = engine_();
  while (v >= limit);
  return lo + static_cast<std::size_t>(v % span);
}

std::size_t RandomStream::categorical(const Eigen::Ref<const Eigen::VectorXd>& weights) {
  const double total = weights.sum();
  if (!(total > 0.0)) throw DataError("categorical draw over zero weights");
  double u = uniform() * total;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    u -= weights(i);
    if (u < 0.0) return static_cast<std::size_t>(i);
  }
  for (Eigen::Index i = weights.size() - 1; i >= 0; --i)
    if (weights(i) > 0.0) return static_cast<std::size_t>(i);
  return 0;
}

}  // namespace subgroup
