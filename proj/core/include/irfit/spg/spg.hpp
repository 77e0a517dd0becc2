#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace irfit::spg {

/// Componentwise bounds. Missing upper bounds mean +infinity.
class BoxConstraint {
 public:
  /// Nonnegative orthant of the given dimension.
  static BoxConstraint nonnegative(std::size_t dimension);

  BoxConstraint(std::vector<double> lower, std::optional<std::vector<double>> upper = std::nullopt);

  std::size_t dimension() const noexcept { return lower_.size(); }
  double lower(std::size_t i) const { return lower_[i]; }
  double upper(std::size_t i) const;

  bool contains(std::span<const double> p) const;

 private:
  std::vector<double> lower_;
  std::optional<std::vector<double>> upper_;
};

/// Clamp `p` into the box, in place.
void project_in_place(std::span<double> p, const BoxConstraint& box);
std::vector<double> project(std::span<const double> p, const BoxConstraint& box);

/// ||P(p - g) - p||_inf
double projected_gradient_norm(std::span<const double> p, std::span<const double> g, const BoxConstraint& box);

struct SpgParams {
  long max_iter = 1000;
  double eps_opt = 1e-8;
  double lambda_min = 1e-30;
  double lambda_max = 1e30;
  int memory = 10;
  double gamma = 1e-4;
  /// Backtracking halvings before the line search is declared failed.
  int max_backtracks = 100;

  void validate() const;
};

/// Returns f(p) and writes grad f(p) into `gradient`.
using ValueGradient = std::function<double(std::span<const double> p, std::span<double> gradient)>;

/// Called with (iterate index, iterate) for p^0, p^1, ..., p^ybar.
using SnapshotHook = std::function<void(long, std::span<const double>)>;

enum class SpgStatus { Converged, IterationLimit, LineSearchFailure };

const char* to_string(SpgStatus status);

/// One accepted step of the nonmonotone line search.
struct SpgStepLog {
  double reference_value;  // max of the last `memory` objective values
  double step;             // accepted t
  double directional;      // <g, d>
  double new_value;
};

struct SpgTrajectory {
  long iterations = 0;  // ybar
  SpgStatus status = SpgStatus::IterationLimit;
  std::vector<double> point;
  double value = 0.0;
  double pg_norm = 0.0;
  long evaluations = 0;
  std::vector<SpgStepLog> steps;  // only filled when requested
};

struct SpgOptions {
  SnapshotHook snapshot;
  bool keep_step_log = false;
};

/// Spectral projected gradient with a Barzilai-Borwein step and a
/// nonmonotone (max of last M values) Armijo line search by halving.
/// Throws NumericalError on non-finite objective or gradient values.
SpgTrajectory spg_run(const ValueGradient& objective, std::span<const double> p0, const BoxConstraint& box,
                      const SpgParams& params, const SpgOptions& options = {});

}  // namespace irfit::spg
