#include "hdnt/rng.hpp"

#include <stdexcept>

#include "hdnt/errors.hpp"

namespace hdnt {

namespace {

// splitmix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + 0x9E3779B97F4A7C15ull * (index + 1));
}

RngStream::RngStream(std::uint64_t seed)
    : key_(seed), engine_(mix64(seed)), normal_(0.0, 1.0), uniform_(0.0, 1.0) {}

double RngStream::gamma(double shape, double scale) {
  std::gamma_distribution<double> dist(shape, scale);
  return dist(engine_);
}

std::uint64_t RngStream::uniform_index(std::uint64_t bound) {
  if (bound == 0) throw InvalidConfig("uniform_index: bound must be positive");
  std::uniform_int_distribution<std::uint64_t> dist(0, bound - 1);
  return dist(engine_);
}

std::vector<int> sample_without_replacement(int k, int n, RngStream& rng) {
  if (k < 0 || n < 0 || k > n) {
    throw InvalidConfig("sample_without_replacement: need 0 <= k <= n");
  }
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(rng.uniform_index(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace hdnt
