#include "osmloc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "osmloc/error.hpp"
#include "osmloc/reference_map.hpp"

namespace osmloc {

OsmData SynthWorld::to_osm() const {
  OsmData data;
  data.buildings = buildings;
  data.roads = roads;
  data.zone = 0;
  return data;
}

SynthWorld generate_synth_world(const SynthParams& p) {
  if (p.blocks < 2) throw ConfigError("synthetic world needs at least 2 blocks per side");
  if (!(p.street_width > 0.0)) throw ConfigError("street width must be positive");
  if (!(p.block_size > 0.0)) throw ConfigError("block size must be positive");
  if (p.perturb < 0.0 || p.perturb >= 1.0) throw ConfigError("perturb must be in [0, 1)");

  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double pitch = p.block_size + p.street_width;
  const double max_inset = p.perturb * p.block_size / 2.0;

  SynthWorld world;
  for (int j = 0; j < p.blocks; ++j) {
    for (int i = 0; i < p.blocks; ++i) {
      const double x0 = p.street_width + i * pitch;
      const double y0 = p.street_width + j * pitch;
      const double left = x0 + max_inset * unit(rng);
      const double right = x0 + p.block_size - max_inset * unit(rng);
      const double bottom = y0 + max_inset * unit(rng);
      const double top = y0 + p.block_size - max_inset * unit(rng);
      world.buildings.push_back({{left, bottom}, {right, bottom}, {right, top}, {left, top}, {left, bottom}});
    }
  }

  const double first = p.street_width / 2.0;
  const double last = first + p.blocks * pitch;
  for (int i = 0; i <= p.blocks; ++i) {
    const double c = first + i * pitch;
    world.roads.push_back({{c, first}, {c, last}});
  }
  for (int j = 0; j <= p.blocks; ++j) {
    const double c = first + j * pitch;
    world.roads.push_back({{first, c}, {last, c}});
  }

  std::uniform_int_distribution<std::size_t> pick_road(0, world.roads.size() - 1);
  for (std::size_t n = 0; n < p.pose_count; ++n) {
    const Polyline& road = world.roads[pick_road(rng)];
    const double t = unit(rng);
    const double yaw = 360.0 * unit(rng);
    world.poses.push_back({road[0].x + t * (road[1].x - road[0].x), road[0].y + t * (road[1].y - road[0].y),
                           yaw >= 360.0 ? 0.0 : yaw});
  }
  return world;
}

Descriptor simulate_scan(const SynthWorld& world, const Pose& pose, double range) {
  if (!(range > 0.0)) throw ConfigError("range must be positive");
  const auto edges = building_edges(world.buildings);
  const PlanarPoint origin{pose.x, pose.y};
  Descriptor out;
  for (int j = 0; j < kAngularBins; ++j) {
    double theta = std::fmod(pose.yaw + j, 360.0);
    if (theta < 0.0) theta += 360.0;
    double best = std::numeric_limits<double>::infinity();
    for (const Edge& e : edges) {
      if (const auto d = ray_hit_distance(origin, theta, e)) best = std::min(best, *d);
    }
    out[j] = best <= range ? best : 0.0;
  }
  return out;
}

Descriptor add_noise(const Descriptor& d, const NoiseModel& noise, double range, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> jitter(-noise.range_noise, noise.range_noise);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Descriptor out;
  for (int i = 0; i < kAngularBins; ++i) {
    // Both draws happen for every bin so the stream does not depend on the data.
    const double delta = jitter(rng);
    const bool drop = unit(rng) < noise.dropout;
    if (d[i] == 0.0 || drop) continue;
    out[i] = std::clamp(d[i] + delta, 1e-6, range);
  }
  return out;
}

}  // namespace osmloc
