#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "osmloc/descriptor.hpp"
#include "osmloc/osm.hpp"

namespace osmloc {

/// Sensor pose in the map frame; yaw in degrees counter-clockwise from +x.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;
};

struct SynthParams {
  std::uint64_t seed = 1;
  int blocks = 6;
  double block_size = 20.0;
  double street_width = 10.0;
  /// Each building side is inset by U[0, perturb * block_size / 2).
  double perturb = 0.3;
  std::size_t pose_count = 100;
};

/// Grid city: blocks x blocks rectangular buildings separated by streets, road
/// centerlines along every street, and random on-road sensor poses.
struct SynthWorld {
  std::vector<Ring> buildings;
  std::vector<Polyline> roads;
  std::vector<Pose> poses;

  /// Same geometry as an OSM extract in a local frame (zone 0).
  OsmData to_osm() const;
};

/// Deterministic for a given seed. Throws ConfigError for blocks < 2 or
/// non-positive sizes.
SynthWorld generate_synth_world(const SynthParams& params);

/// Casts 360 sensor-frame rays (bin j points at yaw + j degrees in the map
/// frame) against every building edge; min hit distance, 0 beyond `range`.
Descriptor simulate_scan(const SynthWorld& world, const Pose& pose, double range);

/// Robustness noise: uniform range perturbation on every hit, then each bin
/// independently dropped to 0 with probability `dropout`.
struct NoiseModel {
  double range_noise = 0.5;
  double dropout = 0.1;
};

/// Perturbed values are clamped to (0, range].
Descriptor add_noise(const Descriptor& d, const NoiseModel& noise, double range, std::mt19937_64& rng);

}  // namespace osmloc
