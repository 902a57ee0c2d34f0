#include "hdnt/genes.hpp"

#include <algorithm>

#include "hdnt/errors.hpp"
#include "hdnt/parallel.hpp"

namespace hdnt {

GeneProtocolResult gene_subset_protocol(const SampleMatrix& data,
                                        const GeneProtocolOptions& options) {
  if (options.repeats < 1) {
    throw InvalidConfig("gene_subset_protocol: repeats must be >= 1");
  }
  if (options.subset_size < 1 || options.subset_size > data.dim()) {
    throw InvalidConfig("gene_subset_protocol: subset_size must lie in [1, d]");
  }

  GeneProtocolResult out;
  out.reports.resize(options.repeats,
                     TestReport{NnStat{0, 0, 0, options.variant}, {}, 0, 0, 0,
                                0, false, 0, 0, options.variant,
                                options.estimator, 0});
  out.subsets.resize(options.repeats);

  parallel_for(options.repeats, options.threads, [&](std::int64_t r) {
    const std::uint64_t base =
        derive_seed(options.seed, static_cast<std::uint64_t>(r) + 1);
    RngStream column_rng(derive_seed(base, 0));
    std::vector<int> cols =
        sample_without_replacement(options.subset_size, data.dim(), column_rng);

    NormalityTestOptions test;
    test.B = options.B;
    test.alpha = options.alpha;
    test.estimator = options.estimator;
    test.variant = options.variant;
    test.seed = derive_seed(base, 1);
    test.threads = 1;
    out.reports[r] = nn_normality_test(data.select_columns(cols), test);
    out.subsets[r] = std::move(cols);
  });

  int rejected = 0;
  for (const auto& rep : out.reports) {
    if (rep.p_value <= options.alpha) ++rejected;
  }
  out.fraction_rejected = static_cast<double>(rejected) / options.repeats;
  return out;
}

}  // namespace hdnt
