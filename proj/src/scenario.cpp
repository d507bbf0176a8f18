#include "bcdt/scenario.hpp"

#include "bcdt/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace bcdt {

void NavalScenarioConfig::validate() const {
  if (count_per_class < 1)
    throw ConfigError("count per class must be at least 1");
  if (horizon < 20)
    throw ConfigError("naval horizon must be at least 20");
  if (!(noise >= 0.0) || !std::isfinite(noise))
    throw ConfigError("noise must be non-negative");
  if (!(waypoint_min.x <= waypoint_max.x && waypoint_min.y <= waypoint_max.y))
    throw ConfigError("waypoint region is empty");
}

void UrbanScenarioConfig::validate() const {
  if (count_per_class < 1)
    throw ConfigError("count per class must be at least 1");
  if (horizon < 10)
    throw ConfigError("urban horizon must be at least 10");
  if (!(dt > 0.0) || !(noise >= 0.0) || !std::isfinite(noise))
    throw ConfigError("dt must be positive and noise non-negative");
  if (brake_min < 0 || brake_max < brake_min || brake_max > horizon)
    throw ConfigError("brake window must lie inside the horizon");
  if (!(brake_decel > 0.0) || !(min_gap >= 0.0))
    throw ConfigError("brake deceleration must be positive and the gap non-negative");
}

namespace {

struct Waypoint {
  double t;
  Point p;
};

/// Piecewise-linear path through `wps` (sorted by time), held at the ends.
Point along(const std::vector<Waypoint>& wps, double t) {
  if (t <= wps.front().t)
    return wps.front().p;
  for (std::size_t k = 1; k < wps.size(); ++k)
    if (t <= wps[k].t) {
      const double u = (t - wps[k - 1].t) / (wps[k].t - wps[k - 1].t);
      return {wps[k - 1].p.x + u * (wps[k].p.x - wps[k - 1].p.x), wps[k - 1].p.y + u * (wps[k].p.y - wps[k - 1].p.y)};
    }
  return wps.back().p;
}

} // namespace

LabeledDataset generate_naval(const NavalScenarioConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  auto uni = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  auto jitter = std::normal_distribution<double>(0.0, 1.0);
  const int T = cfg.horizon;
  const double s = T / 60.0; // time scale relative to the nominal horizon

  std::vector<Signal> signals;
  std::vector<Label> labels;
  std::vector<std::string> ids;
  for (int c = 0; c < 2 * cfg.count_per_class; ++c) {
    const bool normal = c < cfg.count_per_class;
    const Point start{uni(75.0, 85.0), uni(40.0, 46.0)};
    std::vector<Waypoint> wps{{0.0, start}};
    if (normal) {
      // the waypoint is hit on an integer time, so the noiseless trace sits
      // inside the region at a sampled instant
      const int tw = std::uniform_int_distribution<int>(16, 19)(rng);
      wps.push_back({std::round(tw * s), {uni(cfg.waypoint_min.x, cfg.waypoint_max.x),
                                          uni(cfg.waypoint_min.y, cfg.waypoint_max.y)}});
      wps.push_back({uni(42.0, 48.0) * s, {cfg.harbor.x + uni(-1.0, 1.0), cfg.harbor.y + uni(-1.0, 1.0)}});
    } else if ((c - cfg.count_per_class) % 2 == 0) {
      wps.push_back({uni(17.0, 20.0) * s, {cfg.island.x + uni(-2.0, 2.0), cfg.island.y + uni(-2.0, 2.0)}});
      wps.push_back({uni(52.0, 58.0) * s, {cfg.harbor.x + uni(-1.0, 1.0), cfg.harbor.y + uni(-1.0, 1.0)}});
    } else {
      const Point loiter{cfg.passage.x + uni(-2.0, 2.0), cfg.passage.y + uni(-1.5, 1.5)};
      wps.push_back({uni(15.0, 19.0) * s, loiter});
      wps.push_back({uni(32.0, 38.0) * s, {loiter.x + uni(-1.0, 1.0), loiter.y + uni(-1.0, 1.0)}});
      wps.push_back({static_cast<double>(T), {uni(75.0, 85.0), uni(42.0, 48.0)}});
    }
    std::vector<double> values(2 * static_cast<std::size_t>(T + 1));
    for (int t = 0; t <= T; ++t) {
      const Point p = along(wps, t);
      values[t] = p.x + cfg.noise * jitter(rng);
      values[T + 1 + t] = p.y + cfg.noise * jitter(rng);
    }
    signals.emplace_back(2, T, std::move(values));
    labels.push_back(normal ? Label::Positive : Label::Negative);
    ids.push_back("naval" + std::to_string(c));
  }
  return {std::move(signals), std::move(labels), std::move(ids)};
}

LabeledDataset generate_urban(const UrbanScenarioConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  auto uni = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  auto jitter = std::normal_distribution<double>(0.0, 1.0);
  const int T = cfg.horizon;
  const std::size_t L = static_cast<std::size_t>(T) + 1;

  std::vector<Signal> signals;
  std::vector<Label> labels;
  std::vector<std::string> ids;
  for (int c = 0; c < 2 * cfg.count_per_class; ++c) {
    const bool pedestrian = c < cfg.count_per_class;
    double ego_v = uni(8.0, 10.0);
    double other_v = ego_v + uni(1.0, 2.0);
    const double ego_a = uni(0.1, 0.2);
    const double other_a = uni(0.1, 0.2);
    const double slope = uni(0.03, 0.08);
    const int brake_at = std::uniform_int_distribution<int>(cfg.brake_min, cfg.brake_max)(rng);
    double gap = uni(25.0, 35.0);
    bool ego_braking = false;

    std::vector<double> values(4 * L);
    for (std::size_t t = 0; t < L; ++t) {
      const double closing = ego_v - other_v;
      values[t] = gap + cfg.noise * jitter(rng);
      values[L + t] = slope * gap + cfg.noise * jitter(rng);
      values[2 * L + t] = closing + cfg.noise * jitter(rng);
      values[3 * L + t] = slope * closing + cfg.noise * jitter(rng);

      const bool other_stops = pedestrian && static_cast<int>(t) >= brake_at;
      other_v = other_stops ? std::max(0.0, other_v - cfg.brake_decel * cfg.dt) : other_v + other_a * cfg.dt;
      // the ego car brakes hard enough to stop min_gap behind a stopped car
      const double stopping = ego_v * ego_v / (2.0 * 6.0) + cfg.min_gap;
      ego_braking = ego_braking || (other_stops && gap <= stopping);
      if (ego_braking) {
        const double room = std::max(gap - cfg.min_gap, 0.05);
        ego_v = std::max(0.0, ego_v - ego_v * ego_v / (2.0 * room) * cfg.dt);
      } else {
        ego_v += ego_a * cfg.dt;
      }
      gap += (other_v - ego_v) * cfg.dt;
    }
    signals.emplace_back(4, T, std::move(values));
    labels.push_back(pedestrian ? Label::Positive : Label::Negative);
    ids.push_back("urban" + std::to_string(c));
  }
  return {std::move(signals), std::move(labels), std::move(ids)};
}

} // namespace bcdt
