// Independent reference implementations used only by tests. Everything here
// is written as plain double loops against raw matrices, deliberately
// avoiding the library's own computational paths.

#ifndef HDNT_TESTS_ORACLES_HPP
#define HDNT_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace oracles {

using Matrix = std::vector<std::vector<double>>;

inline double sqdist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    s += diff * diff;
  }
  return s;
}

// Nearest neighbor of every point by exhaustive scan, ties to the smallest
// index.
inline std::vector<int> nn_scan(const Matrix& pts) {
  const int m = static_cast<int>(pts.size());
  std::vector<int> out(m, -1);
  for (int i = 0; i < m; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      const double d = sqdist(pts[i], pts[j]);
      if (d < best) {
        best = d;
        out[i] = j;
      }
    }
  }
  return out;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

// Kruskal MST over the complete squared-Euclidean graph. Returns the
// ascending multiset of edge weights.
inline std::vector<double> kruskal_mst_weights(const Matrix& pts) {
  const int m = static_cast<int>(pts.size());
  std::vector<std::tuple<double, int, int>> edges;
  edges.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) edges.emplace_back(sqdist(pts[i], pts[j]), i, j);
  }
  std::sort(edges.begin(), edges.end());
  UnionFind uf(m);
  std::vector<double> weights;
  for (const auto& [w, i, j] : edges) {
    if (uf.unite(i, j)) weights.push_back(w);
  }
  return weights;
}

// Total weight summed over ascending weights, so two identical multisets
// accumulate to bitwise identical totals.
inline double sorted_total(std::vector<double> weights) {
  std::sort(weights.begin(), weights.end());
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

// Minimum spanning weight by exhaustive enumeration of all labelled trees
// on m vertices via Prufer sequences (m^(m-2) trees; keep m tiny).
inline double prufer_min_weight(const Matrix& pts) {
  const int m = static_cast<int>(pts.size());
  if (m == 2) return sqdist(pts[0], pts[1]);
  const int len = m - 2;
  std::vector<int> seq(len, 0);
  double best = std::numeric_limits<double>::infinity();
  for (;;) {
    // Decode the Prufer sequence into tree edges.
    std::vector<int> degree(m, 1);
    for (const int v : seq) ++degree[v];
    std::vector<bool> used(m, false);
    std::vector<double> weights;
    std::vector<int> work(seq);
    for (int step = 0; step < len; ++step) {
      int leaf = -1;
      for (int v = 0; v < m; ++v) {
        if (degree[v] == 1 && !used[v]) {
          leaf = v;
          break;
        }
      }
      used[leaf] = true;
      weights.push_back(sqdist(pts[leaf], pts[work[step]]));
      --degree[work[step]];
    }
    std::vector<int> rest;
    for (int v = 0; v < m; ++v) {
      if (!used[v] && degree[v] == 1) rest.push_back(v);
    }
    weights.push_back(sqdist(pts[rest[0]], pts[rest[1]]));
    best = std::min(best, sorted_total(weights));

    int pos = len - 1;
    while (pos >= 0 && seq[pos] == m - 1) seq[pos--] = 0;
    if (pos < 0) break;
    ++seq[pos];
  }
  return best;
}

// Gauss-Jordan inverse with partial pivoting, for small test matrices.
inline Matrix invert(Matrix a) {
  const int d = static_cast<int>(a.size());
  Matrix inv(d, std::vector<double>(d, 0.0));
  for (int i = 0; i < d; ++i) inv[i][i] = 1.0;
  for (int col = 0; col < d; ++col) {
    int pivot = col;
    for (int r = col + 1; r < d; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-14) {
      throw std::runtime_error("oracle invert: singular matrix");
    }
    std::swap(a[col], a[pivot]);
    std::swap(inv[col], inv[pivot]);
    const double scale = a[col][col];
    for (int c = 0; c < d; ++c) {
      a[col][c] /= scale;
      inv[col][c] /= scale;
    }
    for (int r = 0; r < d; ++r) {
      if (r == col) continue;
      const double f = a[r][col];
      for (int c = 0; c < d; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

struct MardiaOracle {
  double b1;
  double b2;
};

// Multivariate skewness/kurtosis by definition: g_ij = (x_i - xbar)^T
// S^{-1} (x_j - xbar) with S the divisor-n covariance.
inline MardiaOracle mardia(const Matrix& x) {
  const int n = static_cast<int>(x.size());
  const int d = static_cast<int>(x[0].size());
  std::vector<double> mean(d, 0.0);
  for (const auto& row : x) {
    for (int j = 0; j < d; ++j) mean[j] += row[j];
  }
  for (int j = 0; j < d; ++j) mean[j] /= n;

  Matrix s(d, std::vector<double>(d, 0.0));
  for (const auto& row : x) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        s[a][b] += (row[a] - mean[a]) * (row[b] - mean[b]);
      }
    }
  }
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) s[a][b] /= n;
  }
  const Matrix sinv = invert(s);

  auto g = [&](int i, int j) {
    double total = 0.0;
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        total += (x[i][a] - mean[a]) * sinv[a][b] * (x[j][b] - mean[b]);
      }
    }
    return total;
  };

  double b1 = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = g(i, j);
      b1 += v * v * v;
    }
  }
  b1 /= static_cast<double>(n) * n;

  double b2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = g(i, i);
    b2 += v * v;
  }
  b2 /= n;
  return MardiaOracle{b1, b2};
}

// Entrywise adaptive thresholding: sample covariance, theta and lambda all
// by definition, divisor n throughout.
inline Matrix adaptive_threshold(const Matrix& x, double delta) {
  const int n = static_cast<int>(x.size());
  const int d = static_cast<int>(x[0].size());
  std::vector<double> mean(d, 0.0);
  for (const auto& row : x) {
    for (int j = 0; j < d; ++j) mean[j] += row[j];
  }
  for (int j = 0; j < d; ++j) mean[j] /= n;

  Matrix s(d, std::vector<double>(d, 0.0));
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      double total = 0.0;
      for (int k = 0; k < n; ++k) {
        total += (x[k][a] - mean[a]) * (x[k][b] - mean[b]);
      }
      s[a][b] = total / n;
    }
  }

  Matrix out = s;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      if (a == b) continue;
      double theta = 0.0;
      for (int k = 0; k < n; ++k) {
        const double prod = (x[k][a] - mean[a]) * (x[k][b] - mean[b]);
        theta += (prod - s[a][b]) * (prod - s[a][b]);
      }
      theta /= n;
      const double lambda = delta * std::sqrt(theta * std::log(static_cast<double>(d)) / n);
      if (std::abs(s[a][b]) < lambda) out[a][b] = 0.0;
    }
  }
  return out;
}

// Two-sample Kolmogorov-Smirnov distance between empirical CDFs. Tied
// values (common for grid-valued statistics) are consumed from both
// samples before the gap is evaluated.
inline double ks_distance(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double best = 0.0;
  std::size_t ia = 0, ib = 0;
  while (ia < a.size() && ib < b.size()) {
    const double v = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] == v) ++ia;
    while (ib < b.size() && b[ib] == v) ++ib;
    const double fa = static_cast<double>(ia) / a.size();
    const double fb = static_cast<double>(ib) / b.size();
    best = std::max(best, std::abs(fa - fb));
  }
  return best;
}

}  // namespace oracles

#endif  // HDNT_TESTS_ORACLES_HPP
