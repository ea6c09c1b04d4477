#include "osmloc/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "osmloc/error.hpp"

namespace osmloc {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
// Below this the area-formula denominator is treated as a grazing (no) hit.
constexpr double kMinDenominator = 1e-12;

double cross(PlanarPoint a, PlanarPoint b) { return a.x * b.y - a.y * b.x; }
double dot(PlanarPoint a, PlanarPoint b) { return a.x * b.x + a.y * b.y; }

}  // namespace

double distance(PlanarPoint a, PlanarPoint b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::vector<PlanarPoint> interpolate_polyline(std::span<const PlanarPoint> pts, double interval) {
  if (pts.empty()) throw InputError("interpolate_polyline: empty polyline");
  if (!(interval > 0.0)) throw InputError("interpolate_polyline: interval must be positive");

  std::vector<PlanarPoint> out;
  out.push_back(pts.front());

  // Samples sit at arc length k * interval from the first vertex.
  std::size_t k = 1;
  double walked = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const PlanarPoint a = pts[i - 1];
    const PlanarPoint b = pts[i];
    const double len = distance(a, b);
    if (len == 0.0) continue;
    for (double next = k * interval; next < walked + len; next = ++k * interval) {
      const double t = (next - walked) / len;
      out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
    walked += len;
  }

  // Tail: the last vertex is always emitted exactly. A sample landing on it
  // within rounding is replaced rather than duplicated.
  const PlanarPoint last = pts.back();
  if (pts.size() > 1 && walked > 0.0) {
    if (out.size() > 1 && distance(out.back(), last) < 1e-9 * std::max(1.0, interval)) out.back() = last;
    else out.push_back(last);
  }
  return out;
}

PlanarPoint ray_direction(int degree) {
  degree %= 360;
  if (degree < 0) degree += 360;
  switch (degree) {
    case 0: return {1.0, 0.0};
    case 90: return {0.0, 1.0};
    case 180: return {-1.0, 0.0};
    case 270: return {0.0, -1.0};
    default: break;
  }
  const double rad = degree * kDegToRad;
  return {std::cos(rad), std::sin(rad)};
}

RayHit ray_hit(PlanarPoint origin, PlanarPoint dir, const Edge& edge) {
  PlanarPoint u = edge.p1 - origin;
  PlanarPoint v = edge.p2 - origin;
  double span = cross(u, v);
  if (span == 0.0) {
    // Origin collinear with the edge: either on it (sector of 180 degrees) or
    // looking at it end-on (zero-width sector, grazing).
    if (dot(u, v) <= 0.0) return {RayHitKind::kOriginOnEdge, 0.0};
    return {};
  }
  // Order the endpoints so the sector runs counter-clockwise from u to v.
  if (span < 0.0) {
    std::swap(u, v);
    span = -span;
  }
  const double cross_u = cross(u, dir);  // a sin(ta)
  const double cross_v = cross(dir, v);  // b sin(tb)
  if (cross_u < 0.0 || cross_v < 0.0) return {};

  const double a = std::hypot(u.x, u.y);
  const double b = std::hypot(v.x, v.y);
  const double theta_a = std::atan2(cross_u, dot(u, dir));
  const double theta_b = std::atan2(cross_v, dot(dir, v));
  const double denom = a * std::sin(theta_a) + b * std::sin(theta_b);
  if (denom <= kMinDenominator) return {};
  return {RayHitKind::kHit, a * b * std::sin(theta_a + theta_b) / denom};
}

std::optional<double> ray_hit_distance(PlanarPoint origin, double theta_deg, const Edge& edge) {
  PlanarPoint dir;
  if (theta_deg == std::floor(theta_deg) && std::abs(theta_deg) < 1e6) {
    dir = ray_direction(static_cast<int>(theta_deg));
  } else {
    dir = {std::cos(theta_deg * kDegToRad), std::sin(theta_deg * kDegToRad)};
  }
  const RayHit hit = ray_hit(origin, dir, edge);
  if (hit.kind != RayHitKind::kHit) return std::nullopt;
  return hit.distance;
}

}  // namespace osmloc
