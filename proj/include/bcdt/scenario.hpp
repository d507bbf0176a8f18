#pragma once

#include "bcdt/dataset.hpp"

#include <cstdint>

namespace bcdt {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Vessels approaching a harbor. Normal vessels (Positive) pass a waypoint
/// between the island and the passage during t in [15, 20] (times scale with
/// the horizon); anomalous ones either veer to the island or loiter in the
/// northern passage and turn back.
struct NavalScenarioConfig {
  int count_per_class = 100;
  int horizon = 60;
  double noise = 0.0; ///< per-sample Gaussian jitter on both coordinates
  std::uint64_t seed = 0;
  Point harbor{10.0, 25.0};
  Point island{60.0, 12.0};
  Point passage{45.0, 45.0};
  Point waypoint_min{42.0, 28.0};
  Point waypoint_max{45.0, 30.0};

  void validate() const;
};

/// Ego car following another car towards an intersection. Variables are
/// y (gap), z, v_y (closing speed), v_z. In positive traces the other car
/// stops for a pedestrian late in the run and the ego car closes in.
struct UrbanScenarioConfig {
  int count_per_class = 150;
  int horizon = 499;
  double dt = 0.1;         ///< seconds per sample
  double noise = 0.0;
  std::uint64_t seed = 0;
  int brake_min = 330;     ///< earliest sample at which the other car brakes
  int brake_max = 370;
  double brake_decel = 4.0;
  double min_gap = 5.0;

  void validate() const;
};

LabeledDataset generate_naval(const NavalScenarioConfig& cfg);
LabeledDataset generate_urban(const UrbanScenarioConfig& cfg);

} // namespace bcdt
