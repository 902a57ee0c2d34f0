#ifndef HDNT_RNG_HPP
#define HDNT_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace hdnt {

/// Derives a child seed from a master seed and a counter index.
///
/// The derivation is a fixed integer hash (splitmix64 finalizer over the
/// key advanced by index), so substreams for distinct indices are
/// decorrelated and can be handed to concurrent tasks. Serial and parallel
/// execution of indexed work items therefore consume identical randomness.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// A seeded random stream with value semantics.
///
/// Streams are never shared between tasks: each work item derives its own
/// substream by index and owns it. Draws are reproducible bit-for-bit for a
/// given seed on the same build.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  /// Independent child stream identified by (this stream's key, index).
  RngStream substream(std::uint64_t index) const {
    return RngStream(derive_seed(key_, index));
  }

  std::uint64_t key() const { return key_; }

  /// Standard normal draw.
  double normal() { return normal_(engine_); }

  /// Uniform draw on [0, 1).
  double uniform() { return uniform_(engine_); }

  /// Gamma(shape, scale) draw.
  double gamma(double shape, double scale);

  /// Chi-squared draw with (possibly non-integer) degrees of freedom.
  double chi_squared(double dof) { return gamma(0.5 * dof, 2.0); }

  /// Uniform integer in [0, bound).
  std::uint64_t uniform_index(std::uint64_t bound);

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
  std::uniform_real_distribution<double> uniform_;
};

/// First k entries of a Fisher-Yates shuffle of {0, ..., n-1}:
/// a uniform random k-subset, in random order, without replacement.
std::vector<int> sample_without_replacement(int k, int n, RngStream& rng);

}  // namespace hdnt

#endif  // HDNT_RNG_HPP
