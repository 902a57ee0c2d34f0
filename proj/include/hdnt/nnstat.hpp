#ifndef HDNT_NNSTAT_HPP
#define HDNT_NNSTAT_HPP

#include <string>
#include <vector>

#include "hdnt/linalg.hpp"

namespace hdnt {

/// Which group's self-neighbor fraction is measured on the pooled sample.
enum class NnVariant { YY, XX };

std::string to_string(NnVariant v);
NnVariant nn_variant_from_string(const std::string& s);

/// Two equally sized samples pooled into one point set: rows [0, n) carry
/// the X label, rows [n, 2n) the Y label.
class PooledSample {
 public:
  PooledSample(const SampleMatrix& x, const SampleMatrix& y);

  const SampleMatrix& points() const { return points_; }
  int group_size() const { return n_; }
  bool is_y(int index) const { return index >= n_; }

 private:
  SampleMatrix points_;
  int n_;
};

/// A nearest-neighbor fraction r = count / n together with its raw count.
struct NnStat {
  double r;
  int count;
  int n;
  NnVariant variant;
};

/// Index of each point's nearest neighbor under squared Euclidean
/// distance, ties broken toward the smallest index. result[i] != i.
///
/// Cache-blocked over point pairs; each pair is evaluated once with a
/// plain coordinate loop, so the result matches the brute-force double
/// scan exactly. Throws InsufficientPoints when fewer than two points.
std::vector<int> nn_indices(const SampleMatrix& points);

/// Reference implementation: the unblocked double loop.
std::vector<int> nn_indices_bruteforce(const SampleMatrix& points);

/// Fraction of Y points (variant YY) or X points (variant XX) whose
/// nearest neighbor in the pooled sample carries the same label.
NnStat nn_fraction(const PooledSample& pool, NnVariant variant);

}  // namespace hdnt

#endif  // HDNT_NNSTAT_HPP
