#include "irfit/spg/spg.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>

#include "irfit/errors.hpp"

namespace irfit::spg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double a) { return std::isfinite(a); });
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

BoxConstraint BoxConstraint::nonnegative(std::size_t dimension) {
  return BoxConstraint(std::vector<double>(dimension, 0.0));
}

BoxConstraint::BoxConstraint(std::vector<double> lower, std::optional<std::vector<double>> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (upper_) {
    if (upper_->size() != lower_.size()) throw std::invalid_argument("box bounds differ in dimension");
    for (std::size_t i = 0; i < lower_.size(); ++i) {
      if (lower_[i] > (*upper_)[i]) throw std::invalid_argument("box lower bound exceeds upper bound");
    }
  }
}

double BoxConstraint::upper(std::size_t i) const { return upper_ ? (*upper_)[i] : kInf; }

bool BoxConstraint::contains(std::span<const double> p) const {
  if (p.size() != dimension()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < lower(i) || p[i] > upper(i)) return false;
  }
  return true;
}

void project_in_place(std::span<double> p, const BoxConstraint& box) {
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::clamp(p[i], box.lower(i), box.upper(i));
}

std::vector<double> project(std::span<const double> p, const BoxConstraint& box) {
  std::vector<double> out(p.begin(), p.end());
  project_in_place(out, box);
  return out;
}

double projected_gradient_norm(std::span<const double> p, std::span<const double> g, const BoxConstraint& box) {
  double norm = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double moved = std::clamp(p[i] - g[i], box.lower(i), box.upper(i));
    norm = std::max(norm, std::abs(moved - p[i]));
  }
  return norm;
}

void SpgParams::validate() const {
  if (max_iter < 0) throw std::invalid_argument("spg: max_iter must be nonnegative");
  if (!(eps_opt > 0.0)) throw std::invalid_argument("spg: eps_opt must be positive");
  if (!(lambda_min > 0.0) || !(lambda_min < lambda_max)) {
    throw std::invalid_argument("spg: need 0 < lambda_min < lambda_max");
  }
  if (memory < 1) throw std::invalid_argument("spg: memory must be at least 1");
  if (!(gamma > 0.0) || !(gamma < 1.0)) throw std::invalid_argument("spg: gamma must lie in (0,1)");
  if (max_backtracks < 1) throw std::invalid_argument("spg: max_backtracks must be positive");
}

const char* to_string(SpgStatus status) {
  switch (status) {
    case SpgStatus::Converged:
      return "converged";
    case SpgStatus::IterationLimit:
      return "iteration-limit";
    case SpgStatus::LineSearchFailure:
      return "line-search-failure";
  }
  return "unknown";
}

SpgTrajectory spg_run(const ValueGradient& objective, std::span<const double> p0, const BoxConstraint& box,
                      const SpgParams& params, const SpgOptions& options) {
  params.validate();
  if (p0.size() != box.dimension()) throw std::invalid_argument("spg: starting point has wrong dimension");
  if (!box.contains(p0)) throw std::invalid_argument("spg: starting point is infeasible");

  const std::size_t n = p0.size();
  SpgTrajectory out;
  std::vector<double> p(p0.begin(), p0.end());
  std::vector<double> g(n), trial(n), trial_g(n), direction(n);

  auto evaluate = [&](std::span<const double> at, std::span<double> grad) {
    const double value = objective(at, grad);
    ++out.evaluations;
    if (!std::isfinite(value) || !all_finite(grad)) {
      throw NumericalError("spg: non-finite objective or gradient at evaluation " + std::to_string(out.evaluations));
    }
    return value;
  };

  double value = evaluate(p, g);
  if (options.snapshot) options.snapshot(0, p);

  std::deque<double> history{value};
  double pg_norm = projected_gradient_norm(p, g, box);
  double lambda = std::clamp(pg_norm > 0.0 ? 1.0 / pg_norm : params.lambda_max, params.lambda_min, params.lambda_max);

  out.status = SpgStatus::IterationLimit;
  long iter = 0;
  if (pg_norm <= params.eps_opt) out.status = SpgStatus::Converged;

  while (out.status != SpgStatus::Converged && iter < params.max_iter) {
    for (std::size_t i = 0; i < n; ++i) {
      direction[i] = std::clamp(p[i] - lambda * g[i], box.lower(i), box.upper(i)) - p[i];
    }
    const double gtd = dot(g, direction);
    const double reference = *std::max_element(history.begin(), history.end());

    double t = 1.0;
    double trial_value = 0.0;
    bool accepted = false;
    for (int backtrack = 0; backtrack <= params.max_backtracks; ++backtrack) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = p[i] + t * direction[i];
      // p + t d stays feasible by convexity; clamp removes round-off excursions.
      project_in_place(trial, box);
      trial_value = evaluate(trial, trial_g);
      if (trial_value <= reference + params.gamma * t * gtd) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      out.status = SpgStatus::LineSearchFailure;
      break;
    }

    double sts = 0.0, stw = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = trial[i] - p[i];
      const double w = trial_g[i] - g[i];
      sts += s * s;
      stw += s * w;
    }
    lambda = stw <= 0.0 ? params.lambda_max : std::clamp(sts / stw, params.lambda_min, params.lambda_max);

    if (options.keep_step_log) out.steps.push_back({reference, t, gtd, trial_value});

    p.swap(trial);
    g.swap(trial_g);
    value = trial_value;
    ++iter;
    history.push_back(value);
    if (history.size() > static_cast<std::size_t>(params.memory)) history.pop_front();
    if (options.snapshot) options.snapshot(iter, p);

    pg_norm = projected_gradient_norm(p, g, box);
    if (pg_norm <= params.eps_opt) out.status = SpgStatus::Converged;
  }

  out.iterations = iter;
  out.point = std::move(p);
  out.value = value;
  out.pg_norm = pg_norm;
  return out;
}

}  // namespace irfit::spg
