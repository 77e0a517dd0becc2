#include "irfit/dam/particles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace irfit::dam {

double ParticleConfig::mean_ordinate() const {
  if (size() == 0) return 0.0;
  double s = 0.0;
  for (std::size_t j = 0; j < size(); ++j) s += y(j);
  return s / static_cast<double>(size());
}

Packing parse_packing(std::string_view name) {
  if (name == "staggered") return Packing::Staggered;
  if (name == "square") return Packing::Square;
  throw std::invalid_argument("unknown packing '" + std::string(name) + "'");
}

std::string_view to_string(Packing packing) { return packing == Packing::Staggered ? "staggered" : "square"; }

ParticleConfig initial_packing(Packing packing, std::size_t count, double radius) {
  constexpr int kPerRow = 16;
  const double diameter = 2.0 * radius;
  ParticleConfig config;
  config.radius = radius;
  config.coords.reserve(2 * count);
  for (int row = 0; config.size() < count; ++row) {
    const bool shifted = packing == Packing::Staggered && row % 2 == 1;
    const int in_row = shifted ? kPerRow - 1 : kPerRow;
    const double x0 = radius + (shifted ? radius : 0.0);
    const double y = radius + diameter * row;
    for (int j = 0; j < in_row && config.size() < count; ++j) {
      config.coords.push_back(x0 + diameter * j);
      config.coords.push_back(y);
    }
  }
  return config;
}

EnergyModel::EnergyModel(double weight, double radius) : weight_(weight), radius_(radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
}

template <class PairFn>
void EnergyModel::for_each_close_pair(std::span<const double> p, PairFn&& fn) const {
  const int n = static_cast<int>(p.size() / 2);
  if (n < 2) return;
  const double cell = 2.0 * radius_;

  double xmin = p[0], xmax = p[0], ymin = p[1], ymax = p[1];
  for (int j = 1; j < n; ++j) {
    xmin = std::min(xmin, p[2 * j]);
    xmax = std::max(xmax, p[2 * j]);
    ymin = std::min(ymin, p[2 * j + 1]);
    ymax = std::max(ymax, p[2 * j + 1]);
  }
  const double nx_real = std::floor((xmax - xmin) / cell) + 1.0;
  const double ny_real = std::floor((ymax - ymin) / cell) + 1.0;

  // Widely scattered configurations would need a huge grid; fall back to all pairs.
  if (nx_real * ny_real > 64.0 * n) {
    for (int j = 0; j < n; ++j) {
      for (int i = j + 1; i < n; ++i) fn(j, i);
    }
    return;
  }
  const int nx = static_cast<int>(nx_real);
  const int ny = static_cast<int>(ny_real);

  cell_of_.resize(n);
  cell_start_.assign(static_cast<std::size_t>(nx) * ny + 1, 0);
  for (int j = 0; j < n; ++j) {
    const int cx = std::min(nx - 1, static_cast<int>((p[2 * j] - xmin) / cell));
    const int cy = std::min(ny - 1, static_cast<int>((p[2 * j + 1] - ymin) / cell));
    cell_of_[j] = cy * nx + cx;
    ++cell_start_[cell_of_[j] + 1];
  }
  std::partial_sum(cell_start_.begin(), cell_start_.end(), cell_start_.begin());
  order_.resize(n);
  {
    std::vector<int> fill(cell_start_.begin(), cell_start_.end() - 1);
    for (int j = 0; j < n; ++j) order_[fill[cell_of_[j]]++] = j;
  }

  for (int j = 0; j < n; ++j) {
    const int c = cell_of_[j];
    const int cx = c % nx;
    const int cy = c / nx;
    for (int dy = -1; dy <= 1; ++dy) {
      const int yy = cy + dy;
      if (yy < 0 || yy >= ny) continue;
      for (int dx = -1; dx <= 1; ++dx) {
        const int xx = cx + dx;
        if (xx < 0 || xx >= nx) continue;
        const int other = yy * nx + xx;
        for (int k = cell_start_[other]; k < cell_start_[other + 1]; ++k) {
          const int i = order_[k];
          if (i > j) fn(j, i);
        }
      }
    }
  }
}

double EnergyModel::value(std::span<const double> p) const {
  const double reach = 4.0 * radius_ * radius_;
  double overlap = 0.0;
  for_each_close_pair(p, [&](int j, int i) {
    const double dx = p[2 * j] - p[2 * i];
    const double dy = p[2 * j + 1] - p[2 * i + 1];
    const double gap = reach - (dx * dx + dy * dy);
    if (gap > 0.0) overlap += gap * gap;
  });
  double height = 0.0;
  for (std::size_t j = 1; j < p.size(); j += 2) height += p[j];
  return weight_ * overlap + (1.0 - weight_) * height;
}

double EnergyModel::value_gradient(std::span<const double> p, std::span<double> gradient) const {
  if (gradient.size() != p.size()) throw std::invalid_argument("gradient size mismatch");
  const double reach = 4.0 * radius_ * radius_;
  const double gravity = (broken_ ? -1.0 : 1.0) * (1.0 - weight_);
  for (std::size_t j = 0; j < p.size(); j += 2) {
    gradient[j] = 0.0;
    gradient[j + 1] = gravity;
  }
  double overlap = 0.0;
  for_each_close_pair(p, [&](int j, int i) {
    const double dx = p[2 * j] - p[2 * i];
    const double dy = p[2 * j + 1] - p[2 * i + 1];
    const double gap = reach - (dx * dx + dy * dy);
    if (gap <= 0.0) return;
    overlap += gap * gap;
    const double c = -4.0 * weight_ * gap;
    gradient[2 * j] += c * dx;
    gradient[2 * j + 1] += c * dy;
    gradient[2 * i] -= c * dx;
    gradient[2 * i + 1] -= c * dy;
  });
  double height = 0.0;
  for (std::size_t j = 1; j < p.size(); j += 2) height += p[j];
  return weight_ * overlap + (1.0 - weight_) * height;
}

}  // namespace irfit::dam
