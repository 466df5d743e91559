#pragma once

#include <cstdint>
#include <random>

// Seedable, splittable random stream. Every sampling operation takes a
// stream explicitly, so outputs are reproducible and parallel workers can
// own independent substreams derived purely from (root key, split keys) --
// never from how much the parent has already been consumed.

namespace qshare {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_keys(std::uint64_t root, std::uint64_t key) {
  return splitmix64(splitmix64(root) ^ splitmix64(key + 0x9e3779b97f4a7c15ULL));
}

} // namespace detail

class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : key_(seed), engine_(detail::splitmix64(seed)) {}

  // Child stream identified by (this stream's key, key); independent of how
  // many values have been drawn from the parent.
  RngStream split(std::uint64_t key) const { return RngStream(detail::mix_keys(key_, key)); }

  std::uint64_t key() const { return key_; }

  std::uint64_t next_u64() { return engine_(); }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  double normal() { return normal_(engine_); }

  double exponential() { return std::exponential_distribution<double>(1.0)(engine_); }

  std::mt19937_64& engine() { return engine_; }

private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

// Fresh entropy for runs without an explicit seed; callers must echo the
// value into their output so the run stays reproducible after the fact.
inline std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

} // namespace qshare
