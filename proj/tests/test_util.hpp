#pragma once

#include <cmath>
#include <optional>
#include <random>

#include "osmloc/descriptor.hpp"
#include "osmloc/geo.hpp"

namespace osmloc::testing {

/// Parametric ray/segment intersection: origin + t * dir = p1 + u * (p2 - p1),
/// t >= 0, u in [0, 1]. Independent of the area formula used by the library.
inline std::optional<double> intersect_ray_segment(PlanarPoint origin, PlanarPoint dir, const Edge& e) {
  const double ex = e.p2.x - e.p1.x;
  const double ey = e.p2.y - e.p1.y;
  const double det = dir.x * (-ey) - dir.y * (-ex);
  if (std::abs(det) < 1e-15) return std::nullopt;
  const double rx = e.p1.x - origin.x;
  const double ry = e.p1.y - origin.y;
  const double t = (rx * (-ey) - ry * (-ex)) / det;
  const double u = (dir.x * ry - dir.y * rx) / det;
  if (t < 0.0 || u < 0.0 || u > 1.0) return std::nullopt;
  return t * std::hypot(dir.x, dir.y);
}

/// Random descriptor with about `fill` of the bins populated in (0, range].
inline Descriptor random_descriptor(std::mt19937_64& rng, double range, double fill = 0.7) {
  std::uniform_real_distribution<double> value(0.0, range);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Descriptor d;
  for (int i = 0; i < kAngularBins; ++i) {
    if (unit(rng) < fill) d[i] = std::max(1e-3, value(rng));
  }
  return d;
}

/// Brute-force rotated L1: the full 360 x 360 sweep written out directly.
inline std::pair<double, int> brute_rotated(const Descriptor& q, const Descriptor& c) {
  double best = INFINITY;
  int best_shift = 0;
  for (int s = 0; s < kAngularBins; ++s) {
    double sum = 0.0;
    for (int i = 0; i < kAngularBins; ++i) sum += std::fabs(q[(i + s) % kAngularBins] - c[i]);
    if (sum < best) {
      best = sum;
      best_shift = s;
    }
  }
  return {best, best_shift};
}

}  // namespace osmloc::testing
