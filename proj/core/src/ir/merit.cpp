#include "irfit/ir/merit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "irfit/errors.hpp"

namespace irfit::ir {

void IRParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(theta0 > 0.0 && theta0 < 1.0, "theta0 must lie in (0,1)");
  require(nu > 0.0, "nu must be positive");
  require(r > 0.0 && r < 1.0, "r must lie in (0,1)");
  require(alpha > 0.0, "alpha must be positive");
  require(beta > 0.0, "beta must be positive");
  require(eps_feas > 0.0, "eps_feas must be positive");
  require(eps_dist > 0.0, "eps_dist must be positive");
  require(eta > 0.0, "eta must be positive");
}

double merit(double f_val, double h_val, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("merit: theta must lie in (0,1)");
  return theta * f_val + (1.0 - theta) * h_val;
}

double update_penalty(double theta_k, double f_cur, double f_res, double h_cur, double h_res, double r) {
  const double slack = (1.0 - r) / 2.0 * (h_res - h_cur);
  if (merit(f_res, h_res, theta_k) <= merit(f_cur, h_cur, theta_k) + slack) return theta_k;

  const double numerator = (1.0 + r) * (h_cur - h_res);
  const double denominator = 2.0 * (f_res - f_cur + h_cur - h_res);
  if (!(numerator > 0.0) || !(denominator > 0.0)) {
    std::ostringstream msg;
    msg << "penalty update needs positive numerator and denominator (got " << numerator << " / " << denominator
        << "); restoration broke h_re <= r h or f_re <= f + beta h";
    throw AssumptionViolation(1, msg.str());
  }
  // Round-off can push the quotient a hair above theta_k.
  return std::min(theta_k, numerator / denominator);
}

bool acceptance_test(const AcceptanceInput& in, const IRParams& params) {
  if (in.dist < 0.0) throw std::invalid_argument("acceptance_test: negative distance");
  const bool decrease = in.f_trial <= in.f_res - params.alpha * std::pow(in.dist, params.nu);
  if (!decrease) return false;
  const double slack = (1.0 - params.r) / 2.0 * (in.h_res - in.h_cur);
  return merit(in.f_trial, in.h_trial, in.theta_next) <= merit(in.f_cur, in.h_cur, in.theta_next) + slack;
}

}  // namespace irfit::ir
