#include "bcdt/pso.hpp"

#include "bcdt/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace bcdt {

void PsoConfig::validate() const {
  if (swarm_size < 2)
    throw ConfigError("PSO swarm size must be at least 2");
  if (iterations < 1)
    throw ConfigError("PSO iteration count must be at least 1");
  if (!(inertia >= 0.0 && inertia < 1.0))
    throw ConfigError("PSO inertia must lie in [0, 1)");
  if (!(cognitive > 0.0) || !(social > 0.0))
    throw ConfigError("PSO acceleration coefficients must be positive");
  if (!(velocity_clamp > 0.0))
    throw ConfigError("PSO velocity clamp must be positive");
  if (polish_points < 0 || polish_passes < 0)
    throw ConfigError("PSO polish settings must be non-negative");
  if (stall_restart < 0)
    throw ConfigError("PSO stall restart must be non-negative");
}

namespace {

struct Bounds {
  std::vector<double> lo;
  std::vector<double> hi;
};

Bounds bounds_of(const PstlTemplate& tpl) {
  Bounds b;
  // Half a step of slack so rounding gives 0 and T as much room as any
  // interior time.
  b.lo = {-0.5, -0.5};
  b.hi = {tpl.horizon + 0.5, tpl.horizon + 0.5};
  for (const FaceSlot& s : tpl.slots) {
    b.lo.push_back(s.lower_bound);
    b.hi.push_back(s.upper_bound);
  }
  return b;
}

std::vector<double> position_of(const Valuation& v) {
  std::vector<double> x{static_cast<double>(v.t0), static_cast<double>(v.t1)};
  x.insert(x.end(), v.thresholds.begin(), v.thresholds.end());
  return x;
}

} // namespace

Valuation project(const PstlTemplate& tpl, std::span<const double> x) {
  Valuation v;
  auto to_time = [&](double t) {
    const double r = std::round(t);
    return static_cast<int>(std::clamp(r, 0.0, static_cast<double>(tpl.horizon)));
  };
  v.t0 = to_time(x[0]);
  v.t1 = to_time(x[1]);
  if (v.t0 > v.t1)
    std::swap(v.t0, v.t1);
  v.thresholds.resize(tpl.slots.size());
  for (std::size_t k = 0; k < tpl.slots.size(); ++k)
    v.thresholds[k] = std::clamp(x[2 + k], tpl.slots[k].lower_bound, tpl.slots[k].upper_bound);

  // Paired faces on one variable: order them, and open up an empty interval.
  for (std::size_t a = 0; a < tpl.slots.size(); ++a) {
    if (tpl.slots[a].cmp != Comparator::Greater)
      continue;
    for (std::size_t b = 0; b < tpl.slots.size(); ++b) {
      if (tpl.slots[b].cmp != Comparator::LessEqual || tpl.slots[b].variable != tpl.slots[a].variable)
        continue;
      double& lo = v.thresholds[a];
      double& hi = v.thresholds[b];
      if (lo > hi)
        std::swap(lo, hi);
      if (!(lo < hi)) {
        const double up = std::nextafter(hi, std::numeric_limits<double>::infinity());
        if (up <= tpl.slots[b].upper_bound)
          hi = up;
        else
          lo = std::nextafter(lo, -std::numeric_limits<double>::infinity());
      }
    }
  }
  return v;
}

OptimizationResult optimize(const PstlTemplate& tpl, const Objective& objective, const PsoConfig& cfg,
                            std::span<const Valuation> seeds) {
  cfg.validate();
  if (tpl.empty_space())
    throw EmptyParameterSpace("template has an empty parameter space");

  const Bounds b = bounds_of(tpl);
  const std::size_t dims = b.lo.size();
  const std::size_t swarm = static_cast<std::size_t>(cfg.swarm_size);
  std::vector<double> range(dims), vmax(dims);
  for (std::size_t d = 0; d < dims; ++d) {
    range[d] = b.hi[d] - b.lo[d];
    vmax[d] = cfg.velocity_clamp * range[d];
  }

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<std::vector<double>> x(swarm, std::vector<double>(dims));
  std::vector<std::vector<double>> vel(swarm, std::vector<double>(dims));
  auto scatter = [&](std::size_t p) {
    for (std::size_t d = 0; d < dims; ++d) {
      x[p][d] = b.lo[d] + unit(rng) * range[d];
      vel[p][d] = (unit(rng) - 0.5) * 0.2 * range[d];
    }
  };
  for (std::size_t p = 0; p < swarm; ++p)
    scatter(p);
  for (std::size_t p = 0; p < std::min(swarm, seeds.size()); ++p) {
    if (seeds[p].thresholds.size() != tpl.slots.size())
      continue;
    x[p] = position_of(seeds[p]);
    for (std::size_t d = 0; d < dims; ++d)
      x[p][d] = std::clamp(x[p][d], b.lo[d], b.hi[d]);
  }

  OptimizationResult result;
  std::vector<std::vector<double>> best_x = x;
  std::vector<Score> best_score(swarm);
  std::vector<Valuation> best_val(swarm);
  // The global best lives apart from the particles so a restart keeps it.
  std::vector<double> g_x;
  Score g_score;
  Valuation g_val;
  bool have_g = false;
  auto evaluate = [&](std::size_t p, bool fresh) {
    Valuation cand = project(tpl, x[p]);
    const Score s = objective(cand);
    ++result.evaluations;
    bool improved = false;
    if (fresh || better(s, best_score[p])) {
      best_score[p] = s;
      best_val[p] = cand;
      best_x[p] = x[p];
    }
    if (!have_g || better(s, g_score)) {
      g_score = s;
      g_val = std::move(cand);
      g_x = x[p];
      improved = have_g;
      have_g = true;
    }
    return improved;
  };
  for (std::size_t p = 0; p < swarm; ++p)
    evaluate(p, true);
  result.history.push_back(g_score.value);

  // Step objectives leave the swarm idling on a plateau, so after a run of
  // iterations without progress every particle is scattered again.
  int stalled = 0;
  for (int it = 0; it < cfg.iterations; ++it) {
    const bool restart = cfg.stall_restart > 0 && stalled >= cfg.stall_restart;
    if (restart)
      stalled = 0;
    bool improved = false;
    for (std::size_t p = 0; p < swarm; ++p) {
      if (restart) {
        scatter(p);
      } else {
        // Ring neighbourhood: each particle follows the best of itself and
        // its two neighbours, which keeps separate plateaus alive longer.
        const std::size_t left = (p + swarm - 1) % swarm;
        const std::size_t right = (p + 1) % swarm;
        std::size_t lead = p;
        if (better(best_score[left], best_score[lead]))
          lead = left;
        if (better(best_score[right], best_score[lead]))
          lead = right;
        const std::vector<double>& attract = best_x[lead];
        for (std::size_t d = 0; d < dims; ++d) {
          const double r1 = unit(rng);
          const double r2 = unit(rng);
          double v = cfg.inertia * vel[p][d] + cfg.cognitive * r1 * (best_x[p][d] - x[p][d]) +
                     cfg.social * r2 * (attract[d] - x[p][d]);
          v = std::clamp(v, -vmax[d], vmax[d]);
          double nx = x[p][d] + v;
          if (nx < b.lo[d] || nx > b.hi[d]) {
            nx = std::clamp(nx, b.lo[d], b.hi[d]);
            v = 0.0;
          }
          vel[p][d] = v;
          x[p][d] = nx;
        }
      }
      improved |= evaluate(p, restart);
    }
    stalled = improved ? 0 : stalled + 1;
    result.history.push_back(g_score.value);
  }

  // Coordinate sweeps around the global best: every time bound, then an even
  // comb over each threshold range that zooms in on the winner, until a full
  // pass changes nothing.
  if (cfg.polish_points > 0) {
    auto probe_at = [&](std::size_t d, double value) {
      std::vector<double> probe = g_x;
      probe[d] = std::clamp(value, b.lo[d], b.hi[d]);
      Valuation cand = project(tpl, probe);
      const Score s = objective(cand);
      ++result.evaluations;
      if (!better(s, g_score))
        return false;
      g_score = s;
      g_val = std::move(cand);
      g_x = std::move(probe);
      return true;
    };
    for (int pass = 0; pass < cfg.polish_passes; ++pass) {
      bool moved = false;
      for (std::size_t d = 0; d < dims; ++d) {
        if (d < 2) {
          for (int t = 0; t <= tpl.horizon; ++t)
            moved |= probe_at(d, t);
          continue;
        }
        double step = cfg.polish_points > 1 ? range[d] / (cfg.polish_points - 1) : range[d];
        for (int k = 0; k < cfg.polish_points; ++k)
          moved |= probe_at(d, b.lo[d] + step * k);
        for (int level = 0; level < 6; ++level) {
          step /= 4;
          const double centre = g_x[d];
          for (int k = -4; k <= 4; ++k)
            if (k != 0)
              moved |= probe_at(d, centre + step * k);
        }
      }
      if (!moved)
        break;
    }
    result.history.back() = g_score.value;
  }

  result.valuation = g_val;
  result.score = g_score;
  return result;
}

OptimizationResult optimize(const PstlTemplate& tpl, const std::function<double(const Valuation&)>& objective,
                            const PsoConfig& cfg) {
  return optimize(tpl, Objective([&](const Valuation& v) { return Score{objective(v), 0.0}; }), cfg);
}

OptimizationResult grid_search(const PstlTemplate& tpl, const Objective& objective, int time_stride,
                               std::span<const double> threshold_candidates) {
  if (time_stride < 1)
    throw ConfigError("grid time stride must be positive");
  if (tpl.horizon < 0 || threshold_candidates.empty() || tpl.slots.empty())
    throw EmptyParameterSpace("grid search needs a horizon, slots and candidate thresholds");

  std::vector<int> times;
  for (int t = 0; t <= tpl.horizon; t += time_stride)
    times.push_back(t);
  if (times.back() != tpl.horizon)
    times.push_back(tpl.horizon);

  OptimizationResult result;
  bool found = false;
  const std::size_t m = tpl.slots.size();
  std::vector<std::size_t> idx(m, 0);
  Valuation v;
  v.thresholds.resize(m);
  for (std::size_t a = 0; a < times.size(); ++a)
    for (std::size_t c = a; c < times.size(); ++c) {
      v.t0 = times[a];
      v.t1 = times[c];
      std::fill(idx.begin(), idx.end(), 0);
      while (true) {
        for (std::size_t k = 0; k < m; ++k)
          v.thresholds[k] = threshold_candidates[idx[k]];
        if (feasible(tpl, v)) {
          const Score s = objective(v);
          ++result.evaluations;
          if (!found || better(s, result.score)) {
            result.score = s;
            result.valuation = v;
            found = true;
          }
        }
        std::size_t k = 0;
        while (k < m && ++idx[k] == threshold_candidates.size())
          idx[k++] = 0;
        if (k == m)
          break;
      }
    }
  if (!found)
    throw EmptyParameterSpace("no feasible grid point");
  result.history.push_back(result.score.value);
  return result;
}

} // namespace bcdt
