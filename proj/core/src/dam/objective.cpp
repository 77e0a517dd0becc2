#include "irfit/dam/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace irfit::dam {

void FrameScores::push(const std::array<int, kFrameCount>& row) {
  std::array<std::uint8_t, kFrameCount> packed{};
  for (int k = 0; k < kFrameCount; ++k) packed[k] = static_cast<std::uint8_t>(row[k]);
  rows_.push_back(packed);
}

int FrameScores::at(long i, int kappa) const {
  if (i < 0 || i > last_index()) return 0;
  return rows_[static_cast<std::size_t>(i)][kappa];
}

std::array<int, kFrameCount> FrameScores::row(long i) const {
  std::array<int, kFrameCount> out{};
  for (int k = 0; k < kFrameCount; ++k) out[k] = at(i, k);
  return out;
}

Alignment aligned_total(const FrameScores& scores, const std::array<double, kFrameCount>& times, double c) {
  Alignment a;
  a.c = c;
  for (int k = 0; k < kFrameCount; ++k) {
    const double idx = std::floor(c * times[k]);
    // Past the last iterate the frame scores zero.
    a.indices[k] = idx > static_cast<double>(scores.last_index()) ? scores.last_index() + 1 : static_cast<long>(idx);
    a.per_frame[k] = scores.at(a.indices[k], k);
    a.total += a.per_frame[k];
  }
  return a;
}

Alignment best_alignment(const FrameScores& scores, const std::array<double, kFrameCount>& times) {
  const long ybar = scores.last_index();
  std::vector<double> breaks;
  breaks.reserve(static_cast<std::size_t>(kFrameCount) * (ybar + 2));
  for (int k = 0; k < kFrameCount; ++k) {
    for (long m = 0; m <= ybar + 1; ++m) breaks.push_back(static_cast<double>(m) / times[k]);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  Alignment best = aligned_total(scores, times, 0.0);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const Alignment a = aligned_total(scores, times, 0.5 * (breaks[i] + breaks[i + 1]));
    if (a.total > best.total) best = a;
  }
  return best;
}

DamSimulator::DamSimulator(DamSettings settings)
    : settings_(std::move(settings)), initial_(initial_packing(settings_.packing, settings_.particles, settings_.radius)) {}

spg::SpgTrajectory DamSimulator::simulate(double x, long y, const spg::SnapshotHook& hook, bool keep_log) const {
  if (y < 0) throw std::invalid_argument("budget y must be nonnegative");
  const EnergyModel energy(x, settings_.radius);
  spg::SpgParams params = settings_.spg;
  params.max_iter = y;
  const auto box = spg::BoxConstraint::nonnegative(initial_.coords.size());
  return spg::spg_run([&](std::span<const double> p, std::span<double> g) { return energy.value_gradient(p, g); },
                      initial_.coords, box, params, {hook, keep_log});
}

DamEvaluation DamSimulator::evaluate(double x, long y) const {
  FrameScores scores;
  const auto& frames = settings_.frames.frames;
  const auto trajectory = simulate(x, y, [&](long, std::span<const double> p) {
    const BinaryFrame raster = rasterize(p);
    std::array<int, kFrameCount> row{};
    for (int k = 0; k < kFrameCount; ++k) row[k] = fitness(raster, frames[k]);
    scores.push(row);
  });

  DamEvaluation out;
  out.ybar = trajectory.iterations;
  out.status = trajectory.status;
  out.pg_norm = trajectory.pg_norm;
  out.alignment = best_alignment(scores, settings_.frames.times);
  out.matched = out.alignment.total;
  out.f = 1.0 - static_cast<double>(out.matched) / (kFrameCount * kCells);
  return out;
}

std::array<BinaryFrame, kFrameCount> DamSimulator::snapshots(double x, long y,
                                                             const std::array<long, kFrameCount>& indices) const {
  std::array<BinaryFrame, kFrameCount> out{};
  BinaryFrame last_frame;
  std::array<bool, kFrameCount> filled{};
  simulate(x, y, [&](long i, std::span<const double> p) {
    last_frame = rasterize(p);
    for (int k = 0; k < kFrameCount; ++k) {
      if (indices[k] == i) {
        out[k] = last_frame;
        filled[k] = true;
      }
    }
  });
  for (int k = 0; k < kFrameCount; ++k) {
    if (!filled[k]) out[k] = last_frame;
  }
  return out;
}

}  // namespace irfit::dam
