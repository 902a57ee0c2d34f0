#include "hdnt/nnstat.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>

#include "hdnt/errors.hpp"

namespace hdnt {

std::string to_string(NnVariant v) { return v == NnVariant::YY ? "YY" : "XX"; }

NnVariant nn_variant_from_string(const std::string& s) {
  if (s == "YY" || s == "yy") return NnVariant::YY;
  if (s == "XX" || s == "xx") return NnVariant::XX;
  throw InvalidConfig("unknown NN variant: " + s);
}

PooledSample::PooledSample(const SampleMatrix& x, const SampleMatrix& y)
    : points_(x.n() + y.n(), x.dim()), n_(x.n()) {
  if (x.dim() != y.dim()) {
    throw DimensionMismatch("PooledSample: group dimensions differ");
  }
  if (x.n() != y.n()) {
    throw ShapeError("PooledSample: groups must have equal size");
  }
  points_.data().topRows(x.n()) = x.data();
  points_.data().bottomRows(y.n()) = y.data();
}

namespace {

struct Best {
  double dist = std::numeric_limits<double>::infinity();
  int index = -1;
};

// Lexicographic improvement on (distance, index) is independent of the
// order in which candidate pairs are visited.
inline void consider(Best& b, double dist, int j) {
  if (dist < b.dist || (dist == b.dist && j < b.index)) {
    b.dist = dist;
    b.index = j;
  }
}

inline double squared_distance(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int k = 0; k < d; ++k) {
    const double diff = a[k] - b[k];
    s += diff * diff;
  }
  return s;
}

}  // namespace

std::vector<int> nn_indices(const SampleMatrix& points) {
  const int m = points.n();
  const int d = points.dim();
  if (m < 2) throw InsufficientPoints("nn_indices: need at least 2 points");
  if (!points.all_finite()) throw InvalidMatrix("nn_indices: non-finite coordinates");

  const double* base = points.data().data();
  std::vector<Best> best(m);

  constexpr int kBlock = 64;
  for (int ib = 0; ib < m; ib += kBlock) {
    const int iend = std::min(ib + kBlock, m);
    for (int jb = ib; jb < m; jb += kBlock) {
      const int jend = std::min(jb + kBlock, m);
      for (int i = ib; i < iend; ++i) {
        const double* pi = base + static_cast<std::ptrdiff_t>(i) * d;
        for (int j = std::max(jb, i + 1); j < jend; ++j) {
          const double* pj = base + static_cast<std::ptrdiff_t>(j) * d;
          const double dist = squared_distance(pi, pj, d);
          consider(best[i], dist, j);
          consider(best[j], dist, i);
        }
      }
    }
  }

  std::vector<int> out(m);
  for (int i = 0; i < m; ++i) out[i] = best[i].index;
  return out;
}

std::vector<int> nn_indices_bruteforce(const SampleMatrix& points) {
  const int m = points.n();
  const int d = points.dim();
  if (m < 2) throw InsufficientPoints("nn_indices: need at least 2 points");
  if (!points.all_finite()) throw InvalidMatrix("nn_indices: non-finite coordinates");

  const double* base = points.data().data();
  std::vector<int> out(m);
  for (int i = 0; i < m; ++i) {
    Best b;
    const double* pi = base + static_cast<std::ptrdiff_t>(i) * d;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      const double dist =
          squared_distance(pi, base + static_cast<std::ptrdiff_t>(j) * d, d);
      consider(b, dist, j);
    }
    out[i] = b.index;
  }
  return out;
}

NnStat nn_fraction(const PooledSample& pool, NnVariant variant) {
  const std::vector<int> nn = nn_indices(pool.points());
  const int n = pool.group_size();
  int count = 0;
  if (variant == NnVariant::YY) {
    for (int i = n; i < 2 * n; ++i) {
      if (pool.is_y(nn[i])) ++count;
    }
  } else {
    for (int i = 0; i < n; ++i) {
      if (!pool.is_y(nn[i])) ++count;
    }
  }
  return NnStat{static_cast<double>(count) / n, count, n, variant};
}

}  // namespace hdnt
