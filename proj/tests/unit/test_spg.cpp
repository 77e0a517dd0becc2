#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "irfit/errors.hpp"
#include "irfit/spg/spg.hpp"

using namespace irfit;
using spg::BoxConstraint;

namespace {

spg::ValueGradient half_distance(std::vector<double> q) {
  return [q](std::span<const double> p, std::span<double> g) {
    double v = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      g[i] = p[i] - q[i];
      v += 0.5 * g[i] * g[i];
    }
    return v;
  };
}

}  // namespace

TEST_SUITE("spg") {

TEST_CASE("projection") {
  const auto box = BoxConstraint::nonnegative(2);
  CHECK(spg::project(std::vector<double>{-1.0, 2.0}, box) == std::vector<double>{0.0, 2.0});
  const std::vector<double> inside{0.5, 3.0};
  CHECK(spg::project(inside, box) == inside);

  std::mt19937_64 rng(1);
  std::normal_distribution<double> n01;
  for (int i = 0; i < 100; ++i) {
    std::vector<double> p(12), lo(12), hi(12);
    for (int j = 0; j < 12; ++j) {
      p[j] = 3 * n01(rng);
      lo[j] = n01(rng);
      hi[j] = lo[j] + std::abs(n01(rng));
    }
    const auto once = spg::project(p, BoxConstraint(lo));
    const auto twice = spg::project(once, BoxConstraint(lo));
    CHECK(once == twice);
    for (int j = 0; j < 12; ++j) CHECK(once[j] == std::max(lo[j], p[j]));
    const auto boxed = spg::project(p, BoxConstraint(lo, hi));
    for (int j = 0; j < 12; ++j) CHECK(boxed[j] == std::min(hi[j], std::max(lo[j], p[j])));
  }
  CHECK_THROWS_AS(BoxConstraint({1.0}, std::vector<double>{0.0}), std::invalid_argument);
}

TEST_CASE("projected gradient norm") {
  const auto box = BoxConstraint::nonnegative(3);
  CHECK(spg::projected_gradient_norm(std::vector<double>{1, 2, 3}, std::vector<double>{0, 0, 0}, box) == 0.0);
  // on the boundary with the gradient pushing outward: stationary
  CHECK(spg::projected_gradient_norm(std::vector<double>{0, 2, 3}, std::vector<double>{5, 0, 0}, box) == 0.0);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto box8 = BoxConstraint::nonnegative(8);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> p(8), g(8);
    for (int j = 0; j < 8; ++j) p[j] = std::abs(u(rng)), g[j] = 2 * u(rng);
    double ref = 0.0;
    for (int j = 0; j < 8; ++j) ref = std::max(ref, std::abs(std::max(0.0, p[j] - g[j]) - p[j]));
    CHECK(spg::projected_gradient_norm(p, g, box8) == ref);
  }
}

TEST_CASE("interior target converges quickly") {
  std::vector<double> q{0.3, 1.7, 2.0, 0.01, 5.0};
  auto run = spg::spg_run(half_distance(q), std::vector<double>(5, 0.0), BoxConstraint::nonnegative(5), {});
  CHECK(run.status == spg::SpgStatus::Converged);
  CHECK(run.pg_norm <= 1e-8);
  CHECK(run.iterations <= 50);
  for (std::size_t i = 0; i < q.size(); ++i) CHECK(run.point[i] == doctest::Approx(q[i]).epsilon(1e-8));
}

TEST_CASE("exterior target converges to its projection") {
  std::vector<double> q{-1.0, 2.0, -0.5, 0.25};
  auto run = spg::spg_run(half_distance(q), std::vector<double>{1, 1, 1, 1}, BoxConstraint::nonnegative(4), {});
  CHECK(run.status == spg::SpgStatus::Converged);
  const std::vector<double> want{0.0, 2.0, 0.0, 0.25};
  for (std::size_t i = 0; i < q.size(); ++i) CHECK(std::abs(run.point[i] - want[i]) <= 1e-8);
}

TEST_CASE("iterates stay feasible and the line search condition holds on every step") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int c = 0; c < 10; ++c) {
    const std::size_t n = 15;
    std::vector<double> a(n), q(n), lo(n), hi(n), p0(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = std::pow(10.0, 2 * u(rng) - 1);
      q[i] = 4 * u(rng) - 2;
      lo[i] = -u(rng);
      hi[i] = 0.5 + u(rng);
      p0[i] = lo[i];
    }
    // a non-quadratic term keeps the BB steps honest
    auto obj = [&](std::span<const double> p, std::span<double> g) {
      double v = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double r = p[i] - q[i];
        g[i] = a[i] * r + 0.1 * std::cos(p[i]);
        v += 0.5 * a[i] * r * r + 0.1 * std::sin(p[i]);
      }
      return v;
    };
    BoxConstraint box(lo, hi);
    bool feasible = true;
    long snaps = 0;
    spg::SpgOptions opt{[&](long i, std::span<const double> p) {
                          CHECK(i == snaps);
                          ++snaps;
                          feasible = feasible && box.contains(p);
                        },
                        true};
    auto run = spg::spg_run(obj, p0, box, {}, opt);
    CHECK(feasible);
    CHECK(snaps == run.iterations + 1);
    CHECK(run.steps.size() == static_cast<std::size_t>(run.iterations));
    for (const auto& s : run.steps) {
      CHECK(s.directional < 0.0);
      CHECK(s.new_value <= s.reference_value + 1e-4 * s.step * s.directional);
    }
    if (run.status == spg::SpgStatus::Converged) CHECK(run.pg_norm <= 1e-8);
    // determinism
    auto again = spg::spg_run(obj, p0, box, {});
    CHECK(again.point == run.point);
    CHECK(again.iterations == run.iterations);
  }
}

TEST_CASE("iteration cap") {
  spg::SpgParams params;
  params.max_iter = 1;
  auto run = spg::spg_run(half_distance({3.0, -2.0, 7.0}), std::vector<double>(3, 0.0), BoxConstraint::nonnegative(3), params);
  CHECK(run.status == spg::SpgStatus::IterationLimit);
  CHECK(run.iterations == 1);
  params.max_iter = 0;
  run = spg::spg_run(half_distance({3.0}), std::vector<double>{0.0}, BoxConstraint::nonnegative(1), params);
  CHECK(run.iterations == 0);
  CHECK(run.point == std::vector<double>{0.0});
}

TEST_CASE("wrong gradient ends in a line search failure") {
  auto liar = [](std::span<const double> p, std::span<double> g) {
    g[0] = -2.0 * p[0];
    return p[0] * p[0];
  };
  auto run = spg::spg_run(liar, std::vector<double>{1.0}, BoxConstraint::nonnegative(1), {});
  CHECK(run.status == spg::SpgStatus::LineSearchFailure);
}

TEST_CASE("non-finite values abort") {
  auto nan = [](std::span<const double>, std::span<double> g) {
    g[0] = 0.0;
    return std::nan("");
  };
  CHECK_THROWS_AS(spg::spg_run(nan, std::vector<double>{1.0}, BoxConstraint::nonnegative(1), {}), NumericalError);
  CHECK_THROWS_AS(spg::spg_run(half_distance({1.0}), std::vector<double>{-1.0}, BoxConstraint::nonnegative(1), {}),
                  std::invalid_argument);
}

TEST_CASE("parameter validation") {
  spg::SpgParams p;
  CHECK_NOTHROW(p.validate());
  p.lambda_min = 2e30;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.memory = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.eps_opt = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

}  // TEST_SUITE
