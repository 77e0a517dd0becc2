#include "irfit/moa/interval.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

namespace irfit::moa {

namespace {

// Exact ties keep the anchor (a tie is no improvement), otherwise the smaller x.
struct Best {
  double x = 0.0;
  double value = 0.0;
  bool set = false;
  double anchor = std::numeric_limits<double>::quiet_NaN();

  void offer(double at, double v) {
    const bool wins_tie = at == anchor || (x != anchor && at < x);
    if (!set || v < value || (v == value && wins_tie)) {
      x = at;
      value = v;
      set = true;
    }
  }
};

}  // namespace

double solve_subproblem_1d(const ScalarFunction& objective, double lo, double hi, std::optional<double> anchor,
                           double tolerance,
                           const GridSearchOptions& options) {
  if (!(lo <= hi)) throw std::invalid_argument("solve_subproblem_1d: empty interval");
  if (!(tolerance > 0.0)) throw std::invalid_argument("solve_subproblem_1d: tolerance must be positive");
  if (options.points_per_level < 3 || options.points_per_level % 2 == 0) {
    throw std::invalid_argument("solve_subproblem_1d: points_per_level must be odd and >= 3");
  }
  if (anchor) anchor = std::clamp(*anchor, lo, hi);

  const int half = options.points_per_level / 2;
  Best best;
  if (anchor) best.anchor = *anchor;
  std::vector<double> level;
  level.reserve(options.points_per_level + 1);

  double step = (hi - lo) / (options.points_per_level - 1);
  double center = 0.0;
  bool first = true;
  while (true) {
    level.clear();
    for (int i = -half; i <= half; ++i) {
      double x = first ? lo + (hi - lo) * static_cast<double>(i + half) / (options.points_per_level - 1)
                       : center + i * step;
      if (x < lo || x > hi) continue;
      level.push_back(x);
    }
    if (anchor) level.push_back(*anchor);
    std::sort(level.begin(), level.end());
    level.erase(std::unique(level.begin(), level.end()), level.end());
    for (double x : level) best.offer(x, objective(x));

    if (step <= tolerance / 10.0 || step == 0.0) break;
    center = best.x;
    step /= options.shrink;
    first = false;
  }

  for (int walk = 0; walk < options.max_polish_steps; ++walk) {
    Best neighbour;
    for (double w : {best.x - tolerance, best.x + tolerance}) {
      if (w >= lo && w <= hi) neighbour.offer(w, objective(w));
    }
    if (!neighbour.set || !(neighbour.value < best.value)) break;
    best = neighbour;
  }
  return best.x;
}

bool criticality_check_1d(const ScalarFunction& objective, double z, double eta, double lo, double hi) {
  const double at = objective(z);
  for (double w : {z - eta, z + eta}) {
    if (w >= lo && w <= hi && objective(w) < at) return false;
  }
  return true;
}

}  // namespace irfit::moa
