#include "osmloc/scan.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include "osmloc/error.hpp"

namespace osmloc {

namespace {

std::uint32_t load_le32(const std::byte* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<std::uint32_t>(p[i]);
  return v;
}

float load_le_float(const std::byte* p) { return std::bit_cast<float>(load_le32(p)); }

}  // namespace

PointCloud read_velodyne_bin(std::span<const std::byte> bytes) {
  constexpr std::size_t kRecord = 4 * sizeof(float);
  if (bytes.size() % kRecord != 0) {
    throw FormatError("velodyne scan: byte length " + std::to_string(bytes.size()) +
                      " is not a multiple of 16");
  }
  PointCloud cloud;
  cloud.points.resize(bytes.size() / kRecord);
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    const std::byte* rec = bytes.data() + i * kRecord;
    cloud.points[i] = {load_le_float(rec), load_le_float(rec + 4), load_le_float(rec + 8)};
  }
  return cloud;
}

LabelSet read_labels(std::span<const std::byte> bytes) {
  if (bytes.size() % 4 != 0) {
    throw FormatError("label file: byte length " + std::to_string(bytes.size()) + " is not a multiple of 4");
  }
  LabelSet set;
  set.labels.resize(bytes.size() / 4);
  for (std::size_t i = 0; i < set.labels.size(); ++i) set.labels[i] = load_le32(bytes.data() + 4 * i);
  return set;
}

std::vector<std::byte> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw Error("no such file: " + path);
  const auto size = static_cast<std::size_t>(in.tellg());
  std::vector<std::byte> bytes(size);
  in.seekg(0);
  if (size > 0 && !in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(size))) {
    throw Error("read failed: " + path);
  }
  return bytes;
}

PointCloud load_velodyne_bin(const std::string& path) {
  try {
    return read_velodyne_bin(read_file_bytes(path));
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

LabelSet load_labels(const std::string& path) {
  try {
    return read_labels(read_file_bytes(path));
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

PointCloud filter_building_points(const PointCloud& cloud, const LabelSet& labels, std::uint16_t class_id) {
  if (cloud.size() != labels.size()) {
    throw InputError("label count " + std::to_string(labels.size()) + " does not match point count " +
                     std::to_string(cloud.size()));
  }
  PointCloud out;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if ((labels.labels[i] & 0xFFFFU) == class_id) out.points.push_back(cloud.points[i]);
  }
  return out;
}

Descriptor lidar_descriptor(const PointCloud& building_points, double range) {
  if (!(range > 0.0)) throw ConfigError("range must be positive");
  std::array<double, kAngularBins> best;
  best.fill(std::numeric_limits<double>::infinity());
  for (const Point3& p : building_points.points) {
    const double x = p.x;
    const double y = p.y;
    const double r = std::hypot(x, y);
    if (!(r > 0.0) || r > range) continue;
    double bearing = std::atan2(y, x) * (180.0 / std::numbers::pi);
    if (bearing < 0.0) bearing += 360.0;
    auto bin = static_cast<int>(std::floor(bearing));
    // -tiny + 360 can round to exactly 360.
    if (bin >= kAngularBins) bin -= kAngularBins;
    best[bin] = std::min(best[bin], r);
  }
  Descriptor out;
  for (int i = 0; i < kAngularBins; ++i) out[i] = std::isfinite(best[i]) ? best[i] : 0.0;
  return out;
}

}  // namespace osmloc
