#ifndef HDNT_GENES_HPP
#define HDNT_GENES_HPP

#include <vector>

#include "hdnt/normtest.hpp"

namespace hdnt {

struct GeneProtocolOptions {
  int subset_size = 200;
  int repeats = 100;
  int B = 500;
  double alpha = 0.05;
  Estimator estimator = Estimator::adaptive();
  NnVariant variant = NnVariant::YY;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct GeneProtocolResult {
  std::vector<TestReport> reports;           // one per repeat
  std::vector<std::vector<int>> subsets;     // selected column indices
  double fraction_rejected;                  // share of repeats with p <= alpha
};

/// Repeatedly tests normality on random column subsets: each repeat draws
/// `subset_size` distinct columns uniformly without replacement
/// (independently across repeats) and runs the nearest-neighbor test on
/// the restricted data.
GeneProtocolResult gene_subset_protocol(const SampleMatrix& data,
                                        const GeneProtocolOptions& options);

}  // namespace hdnt

#endif  // HDNT_GENES_HPP
