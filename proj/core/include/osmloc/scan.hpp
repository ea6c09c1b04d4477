#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "osmloc/descriptor.hpp"

namespace osmloc {

/// Sensor-frame point (meters, +x forward).
struct Point3 {
  float x = 0.0F;
  float y = 0.0F;
  float z = 0.0F;

  friend bool operator==(const Point3&, const Point3&) = default;
};

struct PointCloud {
  std::vector<Point3> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Raw per-point label records; the semantic class is the lower 16 bits.
struct LabelSet {
  std::vector<std::uint32_t> labels;

  std::size_t size() const { return labels.size(); }
};

/// SemanticKITTI class id for "building".
inline constexpr std::uint16_t kBuildingClass = 50;

/// KITTI velodyne scan: little-endian float32 (x, y, z, intensity) per point.
/// Throws FormatError when the length is not a multiple of 16.
PointCloud read_velodyne_bin(std::span<const std::byte> bytes);

/// SemanticKITTI labels: one little-endian uint32 per point.
/// Throws FormatError when the length is not a multiple of 4.
LabelSet read_labels(std::span<const std::byte> bytes);

std::vector<std::byte> read_file_bytes(const std::string& path);
PointCloud load_velodyne_bin(const std::string& path);
LabelSet load_labels(const std::string& path);

/// Points whose (label & 0xFFFF) == class_id, in original order.
/// Throws InputError if the label and point counts differ.
PointCloud filter_building_points(const PointCloud& cloud, const LabelSet& labels,
                                  std::uint16_t class_id = kBuildingClass);

/// Per-degree minimum planar range of the points. Bin = floor(bearing) with
/// bearing = atan2(y, x) in [0, 360); points beyond `range` are ignored; z is
/// not used.
Descriptor lidar_descriptor(const PointCloud& building_points, double range);

}  // namespace osmloc
