#include "osmloc/reference_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <unordered_map>

#include "osmloc/error.hpp"
#include "osmloc/parallel.hpp"

namespace osmloc {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

bool origin_on_edge(PlanarPoint origin, const Edge& e) {
  const PlanarPoint u = e.p1 - origin;
  const PlanarPoint v = e.p2 - origin;
  return u.x * v.y - u.y * v.x == 0.0 && u.x * v.x + u.y * v.y <= 0.0;
}

double point_segment_distance(PlanarPoint p, const Edge& e) {
  const PlanarPoint d = e.p2 - e.p1;
  const double len2 = d.x * d.x + d.y * d.y;
  double t = len2 > 0.0 ? ((p.x - e.p1.x) * d.x + (p.y - e.p1.y) * d.y) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, {e.p1.x + t * d.x, e.p1.y + t * d.y});
}

// Converts per-bin minima (infinity = no hit) into descriptor values.
Descriptor finish(const std::array<double, kAngularBins>& best, double range) {
  Descriptor out;
  for (int i = 0; i < kAngularBins; ++i) out[i] = best[i] <= range ? best[i] : 0.0;
  return out;
}

std::array<double, kAngularBins> no_hits() {
  std::array<double, kAngularBins> best;
  best.fill(std::numeric_limits<double>::infinity());
  return best;
}

void validate_range(double range) {
  if (!(range > 0.0) || !std::isfinite(range)) throw ConfigError("range must be positive");
}

}  // namespace

ReferenceMap::ReferenceMap(const MapParams& params, std::vector<PlanarPoint> positions,
                           std::vector<Descriptor> descriptors)
    : params_(params), key_length_(params.context().rows()) {
  if (!(params.interval > 0.0)) throw ConfigError("interval must be positive");
  if (positions.size() != descriptors.size()) {
    throw InputError("ReferenceMap: " + std::to_string(positions.size()) + " positions but " +
                     std::to_string(descriptors.size()) + " descriptors");
  }
  const ContextParams ctx = params.context();
  entries_.reserve(positions.size());
  key_matrix_.reserve(positions.size() * static_cast<std::size_t>(key_length_));
  for (std::size_t i = 0; i < positions.size(); ++i) {
    Key key = make_key(descriptors[i], ctx);
    key_matrix_.insert(key_matrix_.end(), key.counts.begin(), key.counts.end());
    entries_.push_back({positions[i], descriptors[i], std::move(key)});
  }
}

Descriptor osm_descriptor(PlanarPoint position, std::span<const Edge> edges, double range,
                          DescribeStats* stats) {
  validate_range(range);
  auto best = no_hits();
  for (const Edge& e : edges) {
    if (stats != nullptr && origin_on_edge(position, e)) ++stats->origin_on_edge;
    for (int deg = 0; deg < kAngularBins; ++deg) {
      const RayHit hit = ray_hit(position, ray_direction(deg), e);
      if (hit.kind == RayHitKind::kHit) best[deg] = std::min(best[deg], hit.distance);
    }
  }
  return finish(best, range);
}

Descriptor osm_descriptor(PlanarPoint position, const OsmData& data, double range) {
  const auto edges = building_edges(data.buildings);
  return osm_descriptor(position, edges, range);
}

EdgeIndex::EdgeIndex(std::vector<Edge> edges, double range)
    : edges_(std::move(edges)), range_(range), cell_(range / 2.0) {
  validate_range(range);
  if (edges_.empty()) return;

  double max_x = -std::numeric_limits<double>::infinity();
  double max_y = max_x;
  min_x_ = min_y_ = std::numeric_limits<double>::infinity();
  for (const Edge& e : edges_) {
    min_x_ = std::min({min_x_, e.p1.x, e.p2.x});
    min_y_ = std::min({min_y_, e.p1.y, e.p2.y});
    max_x = std::max({max_x, e.p1.x, e.p2.x});
    max_y = std::max({max_y, e.p1.y, e.p2.y});
  }
  nx_ = static_cast<std::int64_t>(std::floor((max_x - min_x_) / cell_)) + 1;
  ny_ = static_cast<std::int64_t>(std::floor((max_y - min_y_) / cell_)) + 1;

  auto cells_of = [&](const Edge& e, auto&& visit) {
    const auto x0 = static_cast<std::int64_t>((std::min(e.p1.x, e.p2.x) - min_x_) / cell_);
    const auto x1 = static_cast<std::int64_t>((std::max(e.p1.x, e.p2.x) - min_x_) / cell_);
    const auto y0 = static_cast<std::int64_t>((std::min(e.p1.y, e.p2.y) - min_y_) / cell_);
    const auto y1 = static_cast<std::int64_t>((std::max(e.p1.y, e.p2.y) - min_y_) / cell_);
    for (auto y = y0; y <= std::min(y1, ny_ - 1); ++y)
      for (auto x = x0; x <= std::min(x1, nx_ - 1); ++x) visit(static_cast<std::size_t>(y * nx_ + x));
  };

  cell_start_.assign(static_cast<std::size_t>(nx_ * ny_) + 1, 0);
  for (const Edge& e : edges_) cells_of(e, [&](std::size_t c) { ++cell_start_[c + 1]; });
  for (std::size_t c = 1; c < cell_start_.size(); ++c) cell_start_[c] += cell_start_[c - 1];
  cell_edges_.resize(cell_start_.back());
  std::vector<std::uint32_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (std::uint32_t id = 0; id < edges_.size(); ++id) {
    cells_of(edges_[id], [&](std::size_t c) { cell_edges_[fill[c]++] = id; });
  }
}

Descriptor EdgeIndex::describe(PlanarPoint position, DescribeStats* stats) const {
  auto best = no_hits();
  if (edges_.empty()) return finish(best, range_);

  auto clamp_cell = [](double v, std::int64_t n) {
    return std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(v)), 0, n - 1);
  };
  const double fx0 = (position.x - range_ - min_x_) / cell_;
  const double fx1 = (position.x + range_ - min_x_) / cell_;
  const double fy0 = (position.y - range_ - min_y_) / cell_;
  const double fy1 = (position.y + range_ - min_y_) / cell_;
  if (fx1 < 0.0 || fy1 < 0.0 || fx0 >= static_cast<double>(nx_) || fy0 >= static_cast<double>(ny_)) {
    return finish(best, range_);
  }

  std::vector<std::uint32_t> ids;
  for (auto y = clamp_cell(fy0, ny_); y <= clamp_cell(fy1, ny_); ++y) {
    for (auto x = clamp_cell(fx0, nx_); x <= clamp_cell(fx1, nx_); ++x) {
      const auto c = static_cast<std::size_t>(y * nx_ + x);
      ids.insert(ids.end(), cell_edges_.begin() + cell_start_[c], cell_edges_.begin() + cell_start_[c + 1]);
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  for (std::uint32_t id : ids) {
    const Edge& e = edges_[id];
    // A ray hit is never closer than the segment itself.
    if (point_segment_distance(position, e) > range_) continue;

    PlanarPoint u = e.p1 - position;
    PlanarPoint v = e.p2 - position;
    const double span = u.x * v.y - u.y * v.x;
    if (span == 0.0) {
      if (stats != nullptr && u.x * v.x + u.y * v.y <= 0.0) ++stats->origin_on_edge;
      continue;
    }
    if (span < 0.0) std::swap(u, v);
    const double start = std::atan2(u.y, u.x) * kRadToDeg;
    const double width = std::atan2(std::abs(span), u.x * v.x + u.y * v.y) * kRadToDeg;
    // One degree of slack either side; ray_hit makes the exact membership call.
    const int lo = static_cast<int>(std::floor(start)) - 1;
    const int hi = static_cast<int>(std::ceil(start + width)) + 1;
    for (int deg = lo; deg <= hi; ++deg) {
      const int bin = ((deg % kAngularBins) + kAngularBins) % kAngularBins;
      const RayHit hit = ray_hit(position, ray_direction(bin), e);
      if (hit.kind == RayHitKind::kHit) best[bin] = std::min(best[bin], hit.distance);
    }
  }
  return finish(best, range_);
}

std::vector<PlanarPoint> road_positions(const std::vector<Polyline>& roads, double interval) {
  if (!(interval > 0.0)) throw ConfigError("interval must be positive");
  const double radius = interval / 2.0;
  const double cell = radius;

  // Cell coordinates fit in 32 bits for any projected frame (|x| < 2^31 * cell).
  auto cell_key = [](std::int64_t cx, std::int64_t cy) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32) |
           static_cast<std::uint32_t>(cy);
  };
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> grid;
  std::vector<PlanarPoint> kept;

  for (const Polyline& road : roads) {
    if (road.empty()) continue;
    for (const PlanarPoint& p : interpolate_polyline(road, interval)) {
      const auto cx = static_cast<std::int64_t>(std::floor(p.x / cell));
      const auto cy = static_cast<std::int64_t>(std::floor(p.y / cell));
      bool duplicate = false;
      for (std::int64_t dy = -1; dy <= 1 && !duplicate; ++dy) {
        for (std::int64_t dx = -1; dx <= 1 && !duplicate; ++dx) {
          const auto it = grid.find(cell_key(cx + dx, cy + dy));
          if (it != grid.end()) {
            for (std::uint32_t m : it->second) {
              if (distance(kept[m], p) < radius) {
                duplicate = true;
                break;
              }
            }
          }
        }
      }
      if (duplicate) continue;
      grid[cell_key(cx, cy)].push_back(static_cast<std::uint32_t>(kept.size()));
      kept.push_back(p);
    }
  }
  return kept;
}

ReferenceMap build_reference_map(const OsmData& data, MapParams params, unsigned threads,
                                 BuildStats* stats) {
  (void)params.context();  // validates R / l_b before any heavy work
  params.zone = data.zone;
  std::vector<PlanarPoint> positions = road_positions(data.roads, params.interval);
  const EdgeIndex index(building_edges(data.buildings), params.range);

  std::vector<Descriptor> descriptors(positions.size());
  std::vector<std::size_t> on_edge(positions.size(), 0);
  parallel_for(positions.size(), threads, [&](std::size_t i) {
    DescribeStats s;
    descriptors[i] = index.describe(positions[i], &s);
    on_edge[i] = s.origin_on_edge;
  });

  if (stats != nullptr) {
    stats->positions = positions.size();
    stats->positions_on_edge =
        static_cast<std::size_t>(std::count_if(on_edge.begin(), on_edge.end(), [](std::size_t n) { return n > 0; }));
  }
  return ReferenceMap(params, std::move(positions), std::move(descriptors));
}

}  // namespace osmloc
