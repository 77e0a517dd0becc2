#pragma once

#include <cstdint>
#include <vector>

#include "irfit/spg/spg.hpp"

namespace irfit::cli {

struct GradcheckOptions {
  int configs = 20;
  int particles = 10;
  std::uint64_t seed = 20200101;
  double step = 0x1p-20;
  bool broken_gradient = false;
};

struct GradcheckSample {
  double weight = 0.0;
  int overlapping_pairs = 0;
  double max_error = 0.0;
};

struct GradcheckReport {
  std::vector<GradcheckSample> samples;
  double max_error = 0.0;
};

/// Compares the energy gradient with central differences at random
/// configurations. Centers and weights are drawn on dyadic grids and the
/// step is a power of two, so perturbed coordinates are exact. The error
/// of a component is |g - fd| / max(1, |g|, |fd|).
GradcheckReport gradient_check(const GradcheckOptions& options);

struct QuadraticCase {
  std::vector<double> curvature;  // diagonal Hessian, positive
  std::vector<double> target;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> start;
};

struct QuadraticResult {
  spg::SpgStatus status = spg::SpgStatus::IterationLimit;
  long iterations = 0;
  double pg_norm = 0.0;
  double error = 0.0;  // infinity-norm distance to the clamped target
};

/// 0.5 sum_i a_i (p_i - q_i)^2 over [l, u]; its minimizer is clamp(q, l, u).
QuadraticResult solve_quadratic(const QuadraticCase& problem, const spg::SpgParams& params);

/// The built-in suite: an interior target, an exterior target, then `count`
/// random instances of dimension `dim`.
std::vector<QuadraticCase> quadratic_suite(int count, int dim, std::uint64_t seed);

}  // namespace irfit::cli
