#pragma once

#include <cmath>

#include "irfit/moa/moa.hpp"
#include "irfit/precision.hpp"

namespace irfit::moa {

/// Cheap-fidelity model of F(x) = f(x, y_target) + alpha d(x, x_k)^nu:
///   M(anchor, x) = [f(x, y_cheap) + alpha d(x_k, x)^nu] - f(anchor, y_cheap) + f(anchor, y_target).
/// Summation is ordered so that M(anchor, anchor) reproduces F(anchor) bit for bit.
template <class Problem>
SurrogateModel<typename Problem::Point> default_surrogate(Problem& problem, const typename Problem::Point& x_k,
                                                          const typename Problem::Point& anchor,
                                                          PrecisionToken y_cheap, PrecisionToken y_target,
                                                          double alpha, double nu, double p_exp) {
  using Point = typename Problem::Point;
  const double cheap_at_anchor = problem.evaluate(anchor, y_cheap);
  const double target_at_anchor = problem.evaluate(anchor, y_target);
  Problem* p = &problem;
  return SurrogateModel<Point>{
      anchor,
      [=](const Point& x) {
        const double shift = p->evaluate(x, y_cheap) - cheap_at_anchor;
        return shift + (alpha * std::pow(p->domain().distance(x, x_k), nu) + target_at_anchor);
      },
      p_exp, true};
}

}  // namespace irfit::moa
