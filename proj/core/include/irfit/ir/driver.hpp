#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "irfit/errors.hpp"
#include "irfit/ir/merit.hpp"
#include "irfit/ir/params.hpp"
#include "irfit/ir/problem.hpp"
#include "irfit/moa/default_surrogate.hpp"
#include "irfit/moa/moa.hpp"

namespace irfit::ir {

/// Which part of the optimization phase produced x_{k+1}.
enum class Branch {
  LooseAccepted,     // one MOA iteration at y_k passed the acceptance test
  Restored,          // one MOA iteration at y_re, accepted unconditionally
  LooseCritical,     // h(y_k) <= eps_feas: MOA to criticality at y_k, stop
  RestoredCritical,  // h(y_re) <= eps_feas: MOA to criticality at y_re, stop
  Final,             // terminal row, no step taken
};

inline const char* to_string(Branch b) {
  switch (b) {
    case Branch::LooseAccepted:
      return "loose-accepted";
    case Branch::Restored:
      return "restored";
    case Branch::LooseCritical:
      return "loose-critical";
    case Branch::RestoredCritical:
      return "restored-critical";
    case Branch::Final:
      return "final";
  }
  return "unknown";
}

template <class X>
struct TrialRecord {
  X point;
  double f = 0.0;  // f(x_trial, y_k)
  double dist = 0.0;
  bool accepted = false;
};

/// One row of the trace: the iterate (x_k, y_k, theta_k) and, unless the
/// branch is Final, everything needed to re-check the step it produced.
template <class X>
struct IRRecord {
  long k = 0;
  X x{};
  PrecisionToken y;
  double f = 0.0;
  double theta = 0.0;
  std::optional<std::int64_t> matched;
  Branch branch = Branch::Final;

  PrecisionToken y_re;
  double f_re = 0.0;
  double theta_next = 0.0;
  std::optional<TrialRecord<X>> loose_trial;
  X x_next{};
  PrecisionToken y_next;
  double f_next = 0.0;
  double dist = 0.0;
  bool small_step = false;  // dist <= eps_dist, diagnostic only
  bool certified = false;   // criticality certificate on the terminating branches
  // Last MOA iteration of the step: the model M(anchor, .) built from
  // y_cheap for the target at y_next, regularized with model_sigma.
  PrecisionToken y_cheap;
  X model_anchor{};
  double model_sigma = 0.0;
  long moa_iterations = 0;
  long target_evaluations = 0;
  std::int64_t problem_evaluations = 0;
};

template <class X>
struct IRState {
  long k = 0;
  X x{};
  PrecisionToken y;
  double f = 0.0;
  double theta = 0.5;
  std::vector<PrecisionToken> y_history;  // y_0 .. y_k
};

enum class RunStatus { Converged, BudgetExhausted };

inline const char* to_string(RunStatus s) { return s == RunStatus::Converged ? "converged" : "budget-exhausted"; }

template <class X>
struct IRRun {
  RunStatus status = RunStatus::BudgetExhausted;
  std::vector<IRRecord<X>> trace;  // rows k = 0..K, the last one Final
  IRState<X> final_state;
  long iterations = 0;
  long iterations_above_eps_feas = 0;
  double h_max_observed = 0.0;
  double dist_power_sum = 0.0;   // sum_k d(x_k, x_{k+1})^nu
  double last_dist_power = 0.0;  // tail term of that sum
};

/// Inexact Restoration over a variable-accuracy problem with the default
/// cheap-fidelity surrogate (anchored on y_{max(0,k-1)}) feeding MOA.
template <VariableAccuracyProblem P>
class Driver {
 public:
  using Point = typename P::Point;
  using Domain = typename P::Domain;
  using Function = typename moa::Moa<Domain>::Function;
  using ModelFactory = typename moa::Moa<Domain>::ModelFactory;
  using RecordObserver = std::function<void(const IRRecord<Point>&)>;

  struct StepResult {
    IRState<Point> next;
    IRRecord<Point> record;
    bool terminated = false;
  };

  Driver(P& problem, IRParams params, moa::MoaParams moa_params, RecordObserver observer = {},
         typename moa::Moa<Domain>::Observer moa_observer = {})
      : problem_(problem),
        params_(params),
        moa_(problem.domain(), with_eta(moa_params, params.eta), std::move(moa_observer)),
        observer_(std::move(observer)) {
    params_.validate();
  }

  const IRParams& params() const noexcept { return params_; }
  const moa::Moa<Domain>& moa() const noexcept { return moa_; }

  IRState<Point> start(const Point& x0, PrecisionToken y0) {
    IRState<Point> s;
    s.x = x0;
    s.y = y0;
    s.f = problem_.evaluate(x0, y0);
    s.theta = params_.theta0;
    s.y_history = {y0};
    return s;
  }

  /// F(x) = f(x, y) + alpha d(x, x_k)^nu.
  Function target(const Point& x_k, PrecisionToken y) {
    P* p = &problem_;
    const double alpha = params_.alpha, nu = params_.nu;
    return [p, x_k, y, alpha, nu](const Point& x) {
      return alpha * std::pow(p->domain().distance(x, x_k), nu) + p->evaluate(x, y);
    };
  }

  ModelFactory models(const Point& x_k, PrecisionToken y_cheap, PrecisionToken y_target) {
    P* p = &problem_;
    const double alpha = params_.alpha, nu = params_.nu, p_exp = moa_.params().p_exp;
    return [=](const Point& anchor) {
      return moa::default_surrogate(*p, x_k, anchor, y_cheap, y_target, alpha, nu, p_exp);
    };
  }

  StepResult iterate(const IRState<Point>& s) {
    const std::int64_t evals_before = evaluation_count();
    IRRecord<Point> rec = row(s);

    // Restoration.
    const double h = s.y.accuracy;
    const PrecisionToken y_re = problem_.restore(s.y);
    const double h_re = y_re.accuracy;
    if (!(h_re >= 0.0 && h_re <= params_.r * h) && !(h == 0.0 && h_re == 0.0)) {
      throw AssumptionViolation(1, "restoration gave h(y_re) = " + std::to_string(h_re) + " > r h(y) = " +
                                       std::to_string(params_.r * h));
    }
    const double f_re = problem_.evaluate(s.x, y_re);
    if (!(f_re <= s.f + params_.beta * h)) {
      throw AssumptionViolation(1, "restoration gave f(x, y_re) = " + std::to_string(f_re) +
                                       " > f(x, y) + beta h(y) = " + std::to_string(s.f + params_.beta * h));
    }
    rec.y_re = y_re;
    rec.f_re = f_re;

    // Penalty parameter.
    const double theta_next = update_penalty(s.theta, s.f, f_re, h, h_re, params_.r);
    rec.theta_next = theta_next;

    // Optimization phase.
    const PrecisionToken y_cheap = s.y_history[static_cast<std::size_t>(std::max(0L, s.k - 1))];
    rec.y_cheap = y_cheap;
    PrecisionToken y_next = s.y;
    Point x_next = s.x;
    bool terminated = false;

    auto to_criticality = [&](PrecisionToken y_target, double f_anchor, Branch branch) {
      auto result = moa_.run_to_criticality(target(s.x, y_target), models(s.x, y_cheap, y_target), s.x, f_anchor);
      x_next = result.point;
      rec.branch = branch;
      rec.certified = result.certified;
      rec.model_anchor = result.steps.back().from;
      rec.model_sigma = result.steps.back().sigma;
      rec.moa_iterations += static_cast<long>(result.steps.size());
      rec.target_evaluations += result.evaluations;
      terminated = true;
    };
    auto single_step = [&](PrecisionToken y_target, double f_anchor) {
      auto step = moa_.iterate(target(s.x, y_target), models(s.x, y_cheap, y_target), s.x, f_anchor,
                               moa_.initial_sigma(std::nullopt));
      rec.moa_iterations += 1;
      rec.target_evaluations += step.evaluations;
      rec.model_anchor = step.from;
      rec.model_sigma = step.sigma;
      return step;
    };

    if (h <= params_.eps_feas) {
      to_criticality(y_next, s.f, Branch::LooseCritical);
    } else {
      auto step = single_step(y_next, s.f);
      TrialRecord<Point> trial{step.to, problem_.evaluate(step.to, y_next), distance(s.x, step.to), false};
      trial.accepted = acceptance_test({trial.f, h, f_re, h_re, s.f, h, trial.dist, theta_next}, params_);
      rec.loose_trial = trial;
      if (trial.accepted) {
        x_next = step.to;
        rec.branch = Branch::LooseAccepted;
      } else {
        y_next = y_re;
        if (h_re <= params_.eps_feas) {
          to_criticality(y_next, f_re, Branch::RestoredCritical);
        } else {
          x_next = single_step(y_next, f_re).to;
          rec.branch = Branch::Restored;
        }
      }
    }

    rec.x_next = x_next;
    rec.y_next = y_next;
    rec.f_next = problem_.evaluate(x_next, y_next);
    rec.dist = distance(s.x, x_next);
    rec.small_step = rec.dist <= params_.eps_dist;
    rec.problem_evaluations = evaluation_count() - evals_before;

    StepResult out{s, rec, terminated};
    out.next.k = s.k + 1;
    out.next.x = x_next;
    out.next.y = y_next;
    out.next.f = rec.f_next;
    out.next.theta = theta_next;
    out.next.y_history.push_back(y_next);
    if (observer_) observer_(rec);
    return out;
  }

  /// Default cap: 10 h(y0) / eps_feas iterations (at least one).
  long default_cap(PrecisionToken y0) const {
    return std::max(1L, static_cast<long>(std::ceil(10.0 * y0.accuracy / params_.eps_feas)));
  }

  IRRun<Point> run(const Point& x0, PrecisionToken y0, std::optional<long> cap = std::nullopt) {
    const long limit = cap ? *cap : default_cap(y0);
    IRRun<Point> out;
    IRState<Point> state = start(x0, y0);
    out.h_max_observed = y0.accuracy;
    bool terminated = false;
    while (!terminated && state.k < limit) {
      StepResult step = iterate(state);
      const auto& rec = step.record;
      if (rec.y.accuracy > params_.eps_feas) ++out.iterations_above_eps_feas;
      out.h_max_observed = std::max({out.h_max_observed, rec.y.accuracy, rec.y_re.accuracy});
      out.last_dist_power = std::pow(rec.dist, params_.nu);
      out.dist_power_sum += out.last_dist_power;
      out.trace.push_back(rec);
      terminated = step.terminated;
      state = std::move(step.next);
    }
    out.status = terminated ? RunStatus::Converged : RunStatus::BudgetExhausted;
    out.iterations = state.k;
    out.trace.push_back(row(state));
    if (observer_) observer_(out.trace.back());
    out.final_state = std::move(state);
    return out;
  }

 private:
  static moa::MoaParams with_eta(moa::MoaParams p, double eta) {
    p.eta = eta;
    return p;
  }

  double distance(const Point& a, const Point& b) const { return problem_.domain().distance(a, b); }

  std::int64_t evaluation_count() const {
    if constexpr (CountingProblem<P>) {
      return problem_.evaluation_count();
    } else {
      return 0;
    }
  }

  IRRecord<Point> row(const IRState<Point>& s) {
    IRRecord<Point> rec;
    rec.k = s.k;
    rec.x = s.x;
    rec.y = s.y;
    rec.f = s.f;
    rec.theta = s.theta;
    if constexpr (ScoredProblem<P>) rec.matched = problem_.matched_cells(s.x, s.y);
    rec.x_next = s.x;
    rec.y_next = s.y;
    rec.f_next = s.f;
    return rec;
  }

  P& problem_;
  IRParams params_;
  moa::Moa<Domain> moa_;
  RecordObserver observer_;
};

}  // namespace irfit::ir
