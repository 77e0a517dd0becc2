#pragma once

namespace irfit::ir {

struct IRParams {
  double theta0 = 0.5;
  double nu = 2.0;
  /// Required contraction of h at restoration, h(y_re) <= r h(y).
  double r = 0.5;
  double alpha = 1e-4;
  double beta = 100.0;
  double eps_feas = 1.0 / 12800.0;
  /// Diagnostic only: steps with d(x_k, x_{k+1}) <= eps_dist are flagged.
  double eps_dist = 1e-4;
  double eta = 1e-6;

  /// Throws std::invalid_argument naming the first parameter out of range.
  void validate() const;
};

}  // namespace irfit::ir
