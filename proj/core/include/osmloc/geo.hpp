#pragma once

#include <optional>
#include <span>
#include <vector>

namespace osmloc {

/// Point in the projected map frame: meters east (x) and north (y).
struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
};

inline PlanarPoint operator+(PlanarPoint a, PlanarPoint b) { return {a.x + b.x, a.y + b.y}; }
inline PlanarPoint operator-(PlanarPoint a, PlanarPoint b) { return {a.x - b.x, a.y - b.y}; }

double distance(PlanarPoint a, PlanarPoint b);

/// Building wall segment. Zero-length edges are rejected when rings are ingested.
struct Edge {
  PlanarPoint p1;
  PlanarPoint p2;
};

/// WGS84 geodetic coordinate in degrees.
struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
};

struct ProjectedPoint {
  PlanarPoint point;
  int zone = 0;
};

/// Default UTM zone for a longitude: floor((lon + 180) / 6) + 1, clamped to 1..60.
int utm_zone_for(double lon_deg);

/// WGS84 -> UTM easting/northing (k0 = 0.9996, false easting 500 km, false
/// northing 0 in both hemispheres). When `zone` is given it is used even if the
/// point lies outside that zone, so one dataset stays in a single frame.
/// Throws InputError for |lat| > 84 or out-of-range inputs.
ProjectedPoint wgs84_to_planar(GeoPoint p, std::optional<int> zone = std::nullopt);

/// Resamples a polyline by arc length at exactly `interval` meters starting at
/// the first vertex. Both end vertices are always emitted; the last gap may be
/// shorter than `interval`.
std::vector<PlanarPoint> interpolate_polyline(std::span<const PlanarPoint> pts, double interval);

/// Unit direction of an integer-degree ray measured counter-clockwise from +x.
/// Both descriptor paths use this so equal angles produce bit-identical rays.
PlanarPoint ray_direction(int degree);

enum class RayHitKind {
  kHit,
  kMiss,
  /// Origin lies on the edge (180-degree sector); no usable distance.
  kOriginOnEdge,
};

struct RayHit {
  RayHitKind kind = RayHitKind::kMiss;
  double distance = 0.0;
};

/// Distance from `origin` along a ray of direction `dir` (unit vector) to `edge`,
/// using the triangle-area formula
///   d = a b sin(ta + tb) / (a sin ta + b sin tb)
/// where a, b are the distances to the two endpoints and ta, tb the angles
/// between the ray and each endpoint bearing. Only evaluated when the ray lies
/// inside the angular sector spanned by the edge (endpoints included).
RayHit ray_hit(PlanarPoint origin, PlanarPoint dir, const Edge& edge);

/// Convenience form taking the ray angle in degrees, [0, 360).
std::optional<double> ray_hit_distance(PlanarPoint origin, double theta_deg, const Edge& edge);

}  // namespace osmloc
