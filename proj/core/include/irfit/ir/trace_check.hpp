#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "irfit/ir/driver.hpp"
#include "irfit/ir/merit.hpp"

namespace irfit::ir {

/// lhs <= rhs, allowing rhs to be exceeded by at most `ulps` units in the last place.
inline bool le_within_ulps(double lhs, double rhs, int ulps) {
  double bound = rhs;
  for (int i = 0; i < ulps; ++i) bound = std::nextafter(bound, INFINITY);
  return lhs <= bound;
}

struct TraceViolation {
  long k;
  std::string condition;  // "restoration", "restored-value", "decrease", "merit", "theta"
  double lhs;
  double rhs;
};

/// Recomputes the restoration, penalty and acceptance inequalities from the
/// logged values of every non-final row. Decrease and merit conditions are
/// checked on every row whose step was accepted, i.e. all branches except
/// the loose-critical termination.
template <class X>
std::vector<TraceViolation> check_trace(const std::vector<IRRecord<X>>& trace, const IRParams& params, int ulps = 8) {
  std::vector<TraceViolation> bad;
  auto expect = [&](long k, const char* what, double lhs, double rhs) {
    if (!le_within_ulps(lhs, rhs, ulps)) bad.push_back({k, what, lhs, rhs});
  };
  double theta_prev = params.theta0;
  for (const auto& r : trace) {
    expect(r.k, "theta", r.theta, theta_prev);
    if (!(r.theta > 0.0)) bad.push_back({r.k, "theta", r.theta, 0.0});
    theta_prev = r.theta;
    if (r.branch == Branch::Final) continue;

    const double h = r.y.accuracy, h_re = r.y_re.accuracy;
    expect(r.k, "restoration", h_re, params.r * h);
    expect(r.k, "restored-value", r.f_re, r.f + params.beta * h);
    expect(r.k, "theta", r.theta_next, r.theta);
    if (r.branch == Branch::LooseCritical) continue;

    expect(r.k, "decrease", r.f_next, r.f_re - params.alpha * std::pow(r.dist, params.nu));
    const double slack = (1.0 - params.r) / 2.0 * (h_re - h);
    expect(r.k, "merit", merit(r.f_next, r.y_next.accuracy, r.theta_next), merit(r.f, h, r.theta_next) + slack);
  }
  return bad;
}

}  // namespace irfit::ir
