#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "irfit/moa/interval.hpp"
#include "irfit/precision.hpp"

namespace irfit::problems {

/// f(x, y) = (x - 0.3)^2 + 0.05 sin(40 x) + h(y) cos(7 x) on [0, 1], with
/// h(y) = 1/y for y > 0 and h = 0 (exact evaluation) for y <= 0.
class SyntheticProblem {
 public:
  using Point = double;
  using Domain = moa::Interval;

  explicit SyntheticProblem(double restoration_ratio = 0.5) : ratio_(restoration_ratio) {
    if (!(ratio_ > 0.0 && ratio_ < 1.0)) throw std::invalid_argument("restoration ratio must lie in (0,1)");
  }

  static double accuracy(std::int64_t y) { return y > 0 ? 1.0 / static_cast<double>(y) : 0.0; }
  static PrecisionToken token(std::int64_t y) { return {y, accuracy(y)}; }

  static double exact(double x) { return (x - 0.3) * (x - 0.3) + 0.05 * std::sin(40.0 * x); }

  const Domain& domain() const noexcept { return domain_; }

  double evaluate(double x, PrecisionToken y) {
    ++evaluations_;
    return exact(x) + y.accuracy * std::cos(7.0 * x);
  }

  PrecisionToken restore(PrecisionToken y) const {
    if (y.id <= 0) return token(0);
    return token(static_cast<std::int64_t>(std::ceil(static_cast<double>(y.id) / ratio_)));
  }

  double lower_bound_hint() const { return -0.05; }
  std::int64_t evaluation_count() const noexcept { return evaluations_; }

 private:
  double ratio_;
  Domain domain_{};
  std::int64_t evaluations_ = 0;
};

}  // namespace irfit::problems
