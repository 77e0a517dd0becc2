#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace irfit::dam {

inline constexpr double kRadius = 0.125;
inline constexpr std::size_t kParticles = 419;

/// Ball centers p_1..p_n flattened as (x_1, y_1, x_2, y_2, ...).
struct ParticleConfig {
  std::vector<double> coords;
  double radius = kRadius;

  std::size_t size() const noexcept { return coords.size() / 2; }
  double x(std::size_t j) const { return coords[2 * j]; }
  double y(std::size_t j) const { return coords[2 * j + 1]; }
  double mean_ordinate() const;
};

/// Initial column layouts. `Staggered` alternates rows of 16 and 15 balls with
/// odd rows shifted by one radius (27 rows hold exactly 419 balls); `Square`
/// stacks rows of 16 balls on a square lattice.
enum class Packing { Staggered, Square };

Packing parse_packing(std::string_view name);
std::string_view to_string(Packing packing);

ParticleConfig initial_packing(Packing packing = Packing::Staggered, std::size_t count = kParticles,
                               double radius = kRadius);

/// Pair interaction and gravity energy
///   x * sum_{j<i} max(0, (2r)^2 - |p_j - p_i|^2)^2 + (1 - x) * sum_j [p_j]_2.
/// Pairs are found through a uniform cell grid of side 2r; the visiting order
/// is fixed by the coordinates, so results are deterministic.
class EnergyModel {
 public:
  explicit EnergyModel(double weight, double radius = kRadius);

  double weight() const noexcept { return weight_; }
  double radius() const noexcept { return radius_; }

  double value(std::span<const double> p) const;
  /// Returns the energy and writes its gradient.
  double value_gradient(std::span<const double> p, std::span<double> gradient) const;

  /// Test hook: flips the sign of the gravity term in the gradient only.
  void set_broken_gradient(bool broken) { broken_ = broken; }

 private:
  template <class PairFn>
  void for_each_close_pair(std::span<const double> p, PairFn&& fn) const;

  double weight_;
  double radius_;
  bool broken_ = false;
  mutable std::vector<int> cell_of_;
  mutable std::vector<int> order_;
  mutable std::vector<int> cell_start_;
};

}  // namespace irfit::dam
