#pragma once

#include <algorithm>
#include <cstdio>
#include <type_traits>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "irfit/errors.hpp"
#include "irfit/metric.hpp"

namespace irfit::moa {

struct MoaParams {
  double sigma_min = 1e-4;
  double gamma = 1e-4;
  /// Regularization exponent p + 1.
  double p_exp = 3.0;
  /// Stopping tolerance on d(x_j, x_{j+1}) and the criticality radius.
  double eta = 1e-6;
  int max_doublings = 100;
  long max_iterations = 100000;

  void validate() const {
    if (!(sigma_min > 0.0)) throw std::invalid_argument("moa: sigma_min must be positive");
    if (!(gamma > 0.0)) throw std::invalid_argument("moa: gamma must be positive");
    if (!(p_exp > 0.0)) throw std::invalid_argument("moa: p+1 must be positive");
    if (!(eta > 0.0)) throw std::invalid_argument("moa: eta must be positive");
    if (max_doublings < 1 || max_iterations < 1) throw std::invalid_argument("moa: caps must be positive");
  }
};

/// M(anchor, .): agrees with the target at the anchor and overestimates it
/// up to L d(anchor, x)^{p+1}.
template <class X>
struct SurrogateModel {
  X anchor;
  std::function<double(const X&)> value;
  double exponent = 3.0;
  bool bounded_below = true;
};

/// M(anchor, x) + sigma d(anchor, x)^{p+1}, given the model value and the distance.
inline double regularized_value(double model_value, double distance, double sigma, double exponent) {
  return model_value + sigma * std::pow(distance, exponent);
}

template <class X>
struct MoaStep {
  X from;
  X to;
  double f_from = 0.0;
  double f_to = 0.0;
  double sigma = 0.0;  // accepted sigma_j
  std::vector<double> sigma_trials;
  int evaluations = 0;  // F evaluations at trial points
  double step = 0.0;    // d(x_j, x_{j+1})
};

template <class X>
struct MoaResult {
  X point;
  double value = 0.0;
  bool certified = false;
  std::vector<MoaStep<X>> steps;
  long evaluations = 0;
  /// Iterations with d(x_j, x_{j+1}) > eta.
  long long_steps = 0;
};

/// Regularized-model descent: each iteration minimizes the surrogate plus
/// sigma d^{p+1} over the domain, doubling sigma until the sufficient
/// decrease F(x_trial) <= F(x_j) - gamma d^{p+1} holds.
template <SearchableDomain D>
class Moa {
 public:
  using Point = typename D::Point;
  using Function = std::function<double(const Point&)>;
  using ModelFactory = std::function<SurrogateModel<Point>(const Point& anchor)>;
  using Observer = std::function<void(long j, const MoaStep<Point>&)>;

  Moa(D domain, MoaParams params, Observer observer = {})
      : domain_(std::move(domain)), params_(params), observer_(std::move(observer)) {
    params_.validate();
  }

  const MoaParams& params() const noexcept { return params_; }
  const D& domain() const noexcept { return domain_; }

  /// sigma_{j,1}: sigma_min on the first iteration of a run, afterwards the
  /// previously accepted sigma clamped to [sigma_min, 1].
  double initial_sigma(std::optional<double> previous) const {
    if (!previous) return params_.sigma_min;
    return std::clamp(*previous, params_.sigma_min, std::max(1.0, params_.sigma_min));
  }

  Function regularized(const SurrogateModel<Point>& model, double sigma) const {
    return [this, model, sigma](const Point& x) {
      return regularized_value(model.value(x), domain_.distance(model.anchor, x), sigma, params_.p_exp);
    };
  }

  MoaStep<Point> iterate(const Function& target, const ModelFactory& models, const Point& x, double f_x,
                         double sigma_start) const {
    const SurrogateModel<Point> model = models(x);
    if (!model.bounded_below) throw AssumptionViolation(3, "surrogate model is not bounded below");

    MoaStep<Point> step{x, x, f_x, f_x, sigma_start, {}, 0, 0.0};
    double sigma = sigma_start;
    for (int doublings = 0;; ++doublings) {
      if (doublings > params_.max_doublings) {
        throw AssumptionViolation(3, "no sufficient decrease after " + std::to_string(params_.max_doublings) +
                                         " sigma doublings (sigma = " + std::to_string(sigma) + ")");
      }
      step.sigma_trials.push_back(sigma);
      const Point trial = domain_.minimize(regularized(model, sigma), x, params_.eta);
      const double dist = domain_.distance(x, trial);
      const double f_trial = target(trial);
      ++step.evaluations;
      if (f_trial <= f_x - params_.gamma * std::pow(dist, params_.p_exp)) {
        step.to = trial;
        step.f_to = f_trial;
        step.sigma = sigma;
        step.step = dist;
        return step;
      }
      sigma = std::max(params_.sigma_min, 2.0 * sigma);
    }
  }

  /// Iterates until d(x_j, x_{j+1}) <= eta and the z +/- eta test certifies
  /// x_{j+1} against the last regularized model.
  MoaResult<Point> run_to_criticality(const Function& target, const ModelFactory& models, const Point& x0,
                                      std::optional<double> f_x0 = std::nullopt) const {
    MoaResult<Point> result;
    Point x = x0;
    double fx = f_x0 ? *f_x0 : target(x0);
    std::optional<double> previous;
    for (long j = 0; j < params_.max_iterations; ++j) {
      MoaStep<Point> step = iterate(target, models, x, fx, initial_sigma(previous));
      previous = step.sigma;
      result.evaluations += step.evaluations;
      if (step.step > params_.eta) ++result.long_steps;
      if (observer_) observer_(j, step);
      result.steps.push_back(step);
      if (step.step <= params_.eta) {
        const Function last = regularized(models(x), step.sigma);
        if (domain_.is_critical(last, step.to, params_.eta)) {
          result.point = step.to;
          result.value = step.f_to;
          result.certified = true;
          return result;
        }
      }
      x = step.to;
      fx = step.f_to;
    }
    throw AssumptionViolation(3, "no eta-critical point within " + std::to_string(params_.max_iterations) +
                                     " iterations");
  }

 private:
  D domain_;
  MoaParams params_;
  Observer observer_;
};

/// Human-readable per-iteration log line: j, x_j, sigma trials, F evaluations, decrease.
template <class X>
std::string format_step(long j, const MoaStep<X>& step) {
  std::string out = "moa j=" + std::to_string(j);
  if constexpr (std::is_arithmetic_v<X>) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " x=%.17g", static_cast<double>(step.from));
    out += buf;
  }
  out += " sigma=[";
  for (std::size_t i = 0; i < step.sigma_trials.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%.3g", i ? "," : "", step.sigma_trials[i]);
    out += buf;
  }
  char tail[96];
  std::snprintf(tail, sizeof tail, "] evals=%d decrease=%.6g step=%.3g", step.evaluations, step.f_from - step.f_to,
                step.step);
  return out + tail;
}

}  // namespace irfit::moa
