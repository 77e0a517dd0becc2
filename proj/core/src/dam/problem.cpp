#include "irfit/dam/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace irfit::dam {

double accuracy_h(long y) {
  if (y < 1) throw std::invalid_argument("accuracy_h: budget must be at least 1");
  return 1.0 / static_cast<double>(y);
}

DamProblem::DamProblem(DamSimulator simulator, double restoration_ratio, bool use_cache)
    : simulator_(std::move(simulator)), restoration_ratio_(restoration_ratio), use_cache_(use_cache) {
  if (!(restoration_ratio > 0.0 && restoration_ratio < 1.0)) {
    throw std::invalid_argument("restoration ratio must lie in (0,1)");
  }
}

PrecisionToken DamProblem::token(long y) const { return {y, accuracy_h(y)}; }

PrecisionToken DamProblem::restore(PrecisionToken y) const {
  return token(static_cast<long>(std::ceil(static_cast<double>(y.id) / restoration_ratio_)));
}

double DamProblem::quantize(double x) { return std::round(x * 1e12) / 1e12; }

const DamEvaluation& DamProblem::details(double x, long y) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("dam weight must lie in [0,1]");
  const double xq = quantize(x);
  if (!use_cache_) {
    ++evaluations_;
    scratch_ = simulator_.evaluate(xq, y);
    return scratch_;
  }
  const std::pair<std::int64_t, long> key{std::llround(x * 1e12), y};
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    ++evaluations_;
    it = cache_.emplace(key, simulator_.evaluate(xq, y)).first;
  }
  return it->second;
}

double DamProblem::evaluate(double x, PrecisionToken y) { return details(x, y.id).f; }

}  // namespace irfit::dam
