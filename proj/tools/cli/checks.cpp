#include "cli/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "irfit/dam/particles.hpp"

namespace irfit::cli {

namespace {

// Uniform integer in [0, n) mapped onto k / scale.
double dyadic(std::mt19937_64& rng, std::uint64_t n, double scale) {
  return static_cast<double>(rng() % n) / scale;
}

}  // namespace

GradcheckReport gradient_check(const GradcheckOptions& options) {
  std::mt19937_64 rng(options.seed);
  GradcheckReport report;
  const int n = options.particles;
  const double reach2 = 4.0 * dam::kRadius * dam::kRadius;
  for (int s = 0; s < options.configs; ++s) {
    // Weights in (0, 1) on a 1/256 grid; centers in a box small enough for
    // overlaps, on a 1/4096 grid.
    const double weight = static_cast<double>(1 + rng() % 255) / 256.0;
    const double side = 0.25 * std::ceil(std::sqrt(static_cast<double>(n)));
    std::vector<double> p(2 * n);
    for (auto& v : p) v = dyadic(rng, static_cast<std::uint64_t>(side * 4096.0) + 1, 4096.0);

    dam::EnergyModel model(weight);
    model.set_broken_gradient(options.broken_gradient);
    std::vector<double> g(p.size());
    model.value_gradient(p, g);

    GradcheckSample sample{weight, 0, 0.0};
    for (int j = 0; j < n; ++j) {
      for (int i = j + 1; i < n; ++i) {
        const double dx = p[2 * j] - p[2 * i], dy = p[2 * j + 1] - p[2 * i + 1];
        if (dx * dx + dy * dy < reach2) ++sample.overlapping_pairs;
      }
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double keep = p[i];
      p[i] = keep + options.step;
      const double up = model.value(p);
      p[i] = keep - options.step;
      const double down = model.value(p);
      p[i] = keep;
      const double fd = (up - down) / (2.0 * options.step);
      const double err = std::abs(g[i] - fd) / std::max({1.0, std::abs(g[i]), std::abs(fd)});
      sample.max_error = std::max(sample.max_error, err);
    }
    report.max_error = std::max(report.max_error, sample.max_error);
    report.samples.push_back(sample);
  }
  return report;
}

QuadraticResult solve_quadratic(const QuadraticCase& problem, const spg::SpgParams& params) {
  const std::size_t n = problem.target.size();
  spg::BoxConstraint box{problem.lower, problem.upper};
  auto objective = [&](std::span<const double> p, std::span<double> g) {
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = p[i] - problem.target[i];
      g[i] = problem.curvature[i] * r;
      v += 0.5 * problem.curvature[i] * r * r;
    }
    return v;
  };
  const auto run = spg::spg_run(objective, problem.start, box, params);
  QuadraticResult out{run.status, run.iterations, run.pg_norm, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double want = std::clamp(problem.target[i], problem.lower[i], problem.upper[i]);
    out.error = std::max(out.error, std::abs(run.point[i] - want));
  }
  return out;
}

std::vector<QuadraticCase> quadratic_suite(int count, int dim, std::uint64_t seed) {
  std::vector<QuadraticCase> suite;
  const auto n = static_cast<std::size_t>(dim);
  {
    QuadraticCase inside{std::vector<double>(n, 1.0), std::vector<double>(n, 0.5), std::vector<double>(n, 0.0),
                         std::vector<double>(n, 1.0), std::vector<double>(n, 0.0)};
    suite.push_back(inside);
    QuadraticCase outside = inside;
    for (std::size_t i = 0; i < n; ++i) outside.target[i] = (i % 2 == 0) ? -1.0 - 0.1 * i : 2.0 + 0.1 * i;
    suite.push_back(outside);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int c = 0; c < count; ++c) {
    QuadraticCase q;
    for (std::size_t i = 0; i < n; ++i) {
      const double lo = -1.0 + unit(rng);
      const double hi = lo + 0.5 + 2.0 * unit(rng);
      q.curvature.push_back(std::pow(10.0, -1.0 + 3.0 * unit(rng)));
      q.target.push_back(-3.0 + 6.0 * unit(rng));
      q.lower.push_back(lo);
      q.upper.push_back(hi);
      q.start.push_back(lo + (hi - lo) * unit(rng));
    }
    suite.push_back(std::move(q));
  }
  return suite;
}

}  // namespace irfit::cli
