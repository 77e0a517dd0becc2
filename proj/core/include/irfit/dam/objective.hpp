#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "irfit/dam/frames.hpp"
#include "irfit/dam/particles.hpp"
#include "irfit/spg/spg.hpp"

namespace irfit::dam {

/// Fitness of every SPG iterate against each experiment frame.
class FrameScores {
 public:
  void push(const std::array<int, kFrameCount>& row);
  long last_index() const noexcept { return static_cast<long>(rows_.size()) - 1; }
  /// Fitness of iterate i against frame kappa (0-based); 0 past the trajectory end.
  int at(long i, int kappa) const;
  std::array<int, kFrameCount> row(long i) const;

 private:
  std::vector<std::array<std::uint8_t, kFrameCount>> rows_;
};

struct Alignment {
  int total = 0;
  double c = 0.0;
  std::array<long, kFrameCount> indices{};  // floor(c t_kappa)
  std::array<int, kFrameCount> per_frame{};
};

/// Sum over kappa of the fitness of iterate floor(c t_kappa) against frame kappa.
Alignment aligned_total(const FrameScores& scores, const std::array<double, kFrameCount>& times, double c);

/// Maximizes aligned_total over c >= 0. The sum is piecewise constant in c
/// with breakpoints m / t_kappa (m = 0..ybar+1), so it is evaluated at c = 0
/// and at the midpoint of each pair of consecutive breakpoints. Ties keep the
/// smallest c.
Alignment best_alignment(const FrameScores& scores, const std::array<double, kFrameCount>& times);

struct DamSettings {
  ExperimentFrames frames;
  Packing packing = Packing::Staggered;
  std::size_t particles = kParticles;
  double radius = kRadius;
  spg::SpgParams spg{};  // max_iter is replaced by the budget y
};

struct DamEvaluation {
  double f = 1.0;
  int matched = 0;
  long ybar = 0;
  spg::SpgStatus status = spg::SpgStatus::IterationLimit;
  Alignment alignment;
  double pg_norm = 0.0;
};

/// Runs SPG on the particle energy and scores the trajectory.
class DamSimulator {
 public:
  explicit DamSimulator(DamSettings settings);

  const DamSettings& settings() const noexcept { return settings_; }
  const ParticleConfig& initial() const noexcept { return initial_; }

  /// f(x, y) = 1 - max_c sum_kappa fitness / 640.
  DamEvaluation evaluate(double x, long y) const;

  /// The raw SPG run from the initial packing with budget y.
  spg::SpgTrajectory simulate(double x, long y, const spg::SnapshotHook& hook = {}, bool keep_log = false) const;

  /// Rasterized iterates at the given indices (clamped to ybar).
  std::array<BinaryFrame, kFrameCount> snapshots(double x, long y, const std::array<long, kFrameCount>& indices) const;

 private:
  DamSettings settings_;
  ParticleConfig initial_;
};

}  // namespace irfit::dam
