#pragma once

#include "bcdt/primitive.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace bcdt {

struct PsoConfig {
  int swarm_size = 40;
  int iterations = 60;
  double inertia = 0.72;
  double cognitive = 1.49;
  double social = 1.49;
  std::uint64_t seed = 0;
  double velocity_clamp = 0.5; ///< fraction of each dimension's range
  int stall_restart = 3;       ///< rescatter after this many flat iterations, 0 = never
  int polish_points = 64;      ///< threshold comb size for the final sweeps, 0 = no polish
  int polish_passes = 3;

  /// Throws ConfigError on out-of-range settings.
  void validate() const;
};

/// Objective value with a secondary key used only to break exact ties.
struct Score {
  double value = 0.0;
  double tiebreak = 0.0;
};

inline bool better(const Score& a, const Score& b) {
  return a.value > b.value || (a.value == b.value && a.tiebreak > b.tiebreak);
}

using Objective = std::function<Score(const Valuation&)>;

struct OptimizationResult {
  Valuation valuation;
  Score score;
  /// Global-best value after initialization and after each iteration.
  std::vector<double> history;
  std::size_t evaluations = 0;
};

/// Particle swarm maximization over a template's parameter space. Particles
/// move in the relaxed continuous box; every candidate is projected (time
/// bounds rounded, clamped and ordered; paired thresholds ordered) before the
/// objective sees it. Ring topology, rescatter on stalls, then coordinate
/// sweeps around the best point. `seeds` are optional starting positions.
OptimizationResult optimize(const PstlTemplate& tpl, const Objective& objective, const PsoConfig& cfg,
                            std::span<const Valuation> seeds = {});
OptimizationResult optimize(const PstlTemplate& tpl, const std::function<double(const Valuation&)>& objective,
                            const PsoConfig& cfg);

/// Exhaustive search: t0 <= t1 on {0, stride, 2*stride, ...} plus the horizon,
/// each slot over `threshold_candidates`; infeasible points are skipped.
OptimizationResult grid_search(const PstlTemplate& tpl, const Objective& objective, int time_stride,
                               std::span<const double> threshold_candidates);

/// Maps a relaxed position onto the nearest feasible valuation.
Valuation project(const PstlTemplate& tpl, std::span<const double> position);

} // namespace bcdt
