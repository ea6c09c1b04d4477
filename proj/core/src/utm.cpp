// Transverse Mercator via the Krueger series in the third flattening n,
// carried to n^6 (sub-millimetre inside a UTM zone).

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "osmloc/error.hpp"
#include "osmloc/geo.hpp"

namespace osmloc {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kSemiMajor = 6378137.0;
constexpr double kFlattening = 1.0 / 298.257223563;
constexpr double kScale = 0.9996;
constexpr double kFalseEasting = 500000.0;

struct TmSeries {
  double rectifying_radius;  // A
  double eccentricity;
  std::array<double, 6> alpha;
};

TmSeries make_series() {
  const double n = kFlattening / (2.0 - kFlattening);
  const double n2 = n * n, n3 = n2 * n, n4 = n3 * n, n5 = n4 * n, n6 = n5 * n;
  TmSeries s{};
  s.rectifying_radius = kSemiMajor / (1.0 + n) * (1.0 + n2 / 4.0 + n4 / 64.0 + n6 / 256.0);
  s.eccentricity = std::sqrt(kFlattening * (2.0 - kFlattening));
  s.alpha = {
      n / 2.0 - 2.0 / 3.0 * n2 + 5.0 / 16.0 * n3 + 41.0 / 180.0 * n4 - 127.0 / 288.0 * n5 +
          7891.0 / 37800.0 * n6,
      13.0 / 48.0 * n2 - 3.0 / 5.0 * n3 + 557.0 / 1440.0 * n4 + 281.0 / 630.0 * n5 -
          1983433.0 / 1935360.0 * n6,
      61.0 / 240.0 * n3 - 103.0 / 140.0 * n4 + 15061.0 / 26880.0 * n5 + 167603.0 / 181440.0 * n6,
      49561.0 / 161280.0 * n4 - 179.0 / 168.0 * n5 + 6601661.0 / 7257600.0 * n6,
      34729.0 / 80640.0 * n5 - 3418889.0 / 1995840.0 * n6,
      212378941.0 / 319334400.0 * n6,
  };
  return s;
}

const TmSeries& series() {
  static const TmSeries s = make_series();
  return s;
}

}  // namespace

int utm_zone_for(double lon_deg) {
  int zone = static_cast<int>(std::floor((lon_deg + 180.0) / 6.0)) + 1;
  if (zone < 1) zone = 1;
  if (zone > 60) zone = 60;
  return zone;
}

ProjectedPoint wgs84_to_planar(GeoPoint p, std::optional<int> zone) {
  if (!std::isfinite(p.lat) || !std::isfinite(p.lon) || p.lon < -180.0 || p.lon > 180.0) {
    throw InputError("wgs84_to_planar: invalid coordinate (" + std::to_string(p.lat) + ", " +
                     std::to_string(p.lon) + ")");
  }
  if (p.lat < -84.0 || p.lat > 84.0) {
    throw InputError("wgs84_to_planar: latitude " + std::to_string(p.lat) +
                     " outside UTM domain [-84, 84]");
  }
  const int z = zone.value_or(utm_zone_for(p.lon));
  if (z < 1 || z > 60) throw InputError("wgs84_to_planar: zone " + std::to_string(z) + " out of range");

  const TmSeries& s = series();
  const double central_meridian = (z - 1) * 6.0 - 180.0 + 3.0;
  const double phi = p.lat * kDegToRad;
  double dlambda = (p.lon - central_meridian) * kDegToRad;
  // Keep the longitude difference in (-pi, pi] for zones forced near the antimeridian.
  if (dlambda > std::numbers::pi) dlambda -= 2.0 * std::numbers::pi;
  if (dlambda < -std::numbers::pi) dlambda += 2.0 * std::numbers::pi;

  const double sin_phi = std::sin(phi);
  const double e = s.eccentricity;
  const double t = std::sinh(std::atanh(sin_phi) - e * std::atanh(e * sin_phi));
  const double xi = std::atan2(t, std::cos(dlambda));
  const double eta = std::atanh(std::sin(dlambda) / std::sqrt(1.0 + t * t));

  double easting_sum = eta;
  double northing_sum = xi;
  for (int j = 1; j <= 6; ++j) {
    const double a = s.alpha[j - 1];
    easting_sum += a * std::cos(2.0 * j * xi) * std::sinh(2.0 * j * eta);
    northing_sum += a * std::sin(2.0 * j * xi) * std::cosh(2.0 * j * eta);
  }

  return {{kFalseEasting + kScale * s.rectifying_radius * easting_sum,
           kScale * s.rectifying_radius * northing_sum},
          z};
}

}  // namespace osmloc
