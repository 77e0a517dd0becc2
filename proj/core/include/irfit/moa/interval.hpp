#pragma once

#include <cmath>
#include <functional>
#include <optional>

namespace irfit::moa {

using ScalarFunction = std::function<double(double)>;

struct GridSearchOptions {
  int points_per_level = 41;
  double shrink = 10.0;
  /// Cap on the z +/- tolerance descent walk that follows the grid levels.
  int max_polish_steps = 1000;
};

/// Multi-resolution grid search on [lo, hi]: a uniform grid of 41 points,
/// then repeatedly a 41-point grid recentred on the best point with the step
/// divided by 10, until the step is at most tolerance/10. The anchor, if
/// given, is evaluated on every level. A final walk moves to z - tolerance or
/// z + tolerance while either is strictly better, so the result passes
/// `criticality_check_1d`. Ties keep the anchor, otherwise go to the smallest x.
double solve_subproblem_1d(const ScalarFunction& objective, double lo, double hi, std::optional<double> anchor,
                           double tolerance,
                           const GridSearchOptions& options = {});

/// True iff objective(z) <= objective(w) for every w in {z - eta, z + eta}
/// that lies in [lo, hi].
bool criticality_check_1d(const ScalarFunction& objective, double z, double eta, double lo = 0.0, double hi = 1.0);

/// The closed interval [lo, hi] with |a - b| as distance.
struct Interval {
  using Point = double;

  double lo = 0.0;
  double hi = 1.0;
  GridSearchOptions search{};

  double distance(double a, double b) const { return std::abs(a - b); }
  bool contains(double x) const { return x >= lo && x <= hi; }

  double minimize(const std::function<double(const double&)>& objective, const double& anchor, double tolerance) const {
    return solve_subproblem_1d([&](double x) { return objective(x); }, lo, hi, anchor, tolerance, search);
  }
  bool is_critical(const std::function<double(const double&)>& objective, const double& z, double tolerance) const {
    return criticality_check_1d([&](double x) { return objective(x); }, z, tolerance, lo, hi);
  }
};

}  // namespace irfit::moa
