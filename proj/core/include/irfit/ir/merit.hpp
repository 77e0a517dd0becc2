#pragma once

#include "irfit/ir/params.hpp"

namespace irfit::ir {

/// theta f + (1 - theta) h, theta in (0, 1).
double merit(double f_val, double h_val, double theta);

/// Penalty parameter after restoration. Keeps theta_k when the restored pair
/// already decreases the merit by (1 - r)/2 (h_res - h_cur); otherwise returns
///   (1 + r)(h_cur - h_res) / (2 (f_res - f_cur + h_cur - h_res)).
/// Throws AssumptionViolation(1) when that quotient is not positive.
double update_penalty(double theta_k, double f_cur, double f_res, double h_cur, double h_res, double r);

struct AcceptanceInput {
  double f_trial;  // f(x_trial, y_{k+1})
  double h_trial;  // h(y_{k+1})
  double f_res;    // f(x_k, y_re)
  double h_res;    // h(y_re)
  double f_cur;    // f(x_k, y_k)
  double h_cur;    // h(y_k)
  double dist;     // d(x_k, x_trial)
  double theta_next;
};

/// Sufficient decrease against the restored value and merit decrease with
/// respect to the current pair, both at theta_{k+1}.
bool acceptance_test(const AcceptanceInput& in, const IRParams& params);

}  // namespace irfit::ir
