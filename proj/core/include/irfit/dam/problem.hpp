#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "irfit/dam/objective.hpp"
#include "irfit/moa/interval.hpp"
#include "irfit/precision.hpp"

namespace irfit::dam {

/// h(y) = 1 / y.
double accuracy_h(long y);

/// The weight-fitting problem over [0, 1] with SPG budgets as precision
/// tokens. Evaluations are memoized on (x rounded to 12 decimals, y); the
/// rounded x is also what gets simulated, so cached and fresh values agree.
class DamProblem {
 public:
  using Point = double;
  using Domain = moa::Interval;

  explicit DamProblem(DamSimulator simulator, double restoration_ratio = 0.5, bool use_cache = true);

  const Domain& domain() const noexcept { return domain_; }
  const DamSimulator& simulator() const noexcept { return simulator_; }

  PrecisionToken token(long y) const;
  /// y_re = ceil(y / r): doubling for r = 1/2.
  PrecisionToken restore(PrecisionToken y) const;

  double evaluate(double x, PrecisionToken y);
  const DamEvaluation& details(double x, long y);
  std::int64_t matched_cells(double x, PrecisionToken y) { return details(x, y.id).matched; }
  std::int64_t total_cells() const { return kFrameCount * kCells; }
  double lower_bound_hint() const { return 0.0; }

  /// SPG runs actually performed (cache misses).
  std::int64_t evaluation_count() const noexcept { return evaluations_; }
  std::size_t cache_size() const noexcept { return cache_.size(); }

  static double quantize(double x);

 private:
  DamSimulator simulator_;
  Domain domain_{};
  double restoration_ratio_;
  bool use_cache_;
  std::int64_t evaluations_ = 0;
  std::map<std::pair<std::int64_t, long>, DamEvaluation> cache_;
  DamEvaluation scratch_;
};

}  // namespace irfit::dam
