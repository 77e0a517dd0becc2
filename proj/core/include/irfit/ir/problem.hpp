#pragma once

#include <concepts>
#include <cstdint>

#include "irfit/metric.hpp"
#include "irfit/precision.hpp"

namespace irfit::ir {

/// f(x, y) over a searchable metric domain with an accuracy-improving
/// restoration y -> y_re. `evaluate` must be deterministic within a run.
template <class P>
concept VariableAccuracyProblem = requires(P& problem, const P& cproblem, const typename P::Point& x,
                                           const PrecisionToken& y) {
  typename P::Point;
  typename P::Domain;
  requires SearchableDomain<typename P::Domain>;
  requires std::same_as<typename P::Domain::Point, typename P::Point>;
  { cproblem.domain() } -> std::convertible_to<const typename P::Domain&>;
  { problem.evaluate(x, y) } -> std::convertible_to<double>;
  { cproblem.restore(y) } -> std::same_as<PrecisionToken>;
  { cproblem.lower_bound_hint() } -> std::convertible_to<double>;
};

/// Problems whose values have the exact form f = 1 - m / total_cells().
template <class P>
concept ScoredProblem = VariableAccuracyProblem<P> && requires(P& problem, const typename P::Point& x,
                                                               const PrecisionToken& y) {
  { problem.matched_cells(x, y) } -> std::convertible_to<std::int64_t>;
  { problem.total_cells() } -> std::convertible_to<std::int64_t>;
};

/// Problems that count their (uncached) evaluations.
template <class P>
concept CountingProblem = requires(const P& problem) {
  { problem.evaluation_count() } -> std::convertible_to<std::int64_t>;
};

}  // namespace irfit::ir
