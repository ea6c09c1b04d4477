#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "osmloc/descriptor.hpp"
#include "osmloc/geo.hpp"
#include "osmloc/osm.hpp"

namespace osmloc {

/// Parameters shared by every descriptor in a map.
struct MapParams {
  double range = 50.0;
  double bin_length = 5.0;
  double interval = 1.0;
  /// UTM zone of the planar frame; 0 for a local frame.
  int zone = 0;

  ContextParams context() const { return {range, bin_length}; }
};

struct MapEntry {
  PlanarPoint position;
  Descriptor descriptor;
  Key key;
};

/// Positioned descriptors with their rotation-invariant keys. Immutable once
/// built; safe to share between concurrent queries.
class ReferenceMap {
 public:
  /// Keys are derived from the descriptors. Throws ConfigError on bad params
  /// and InputError when the two lists differ in length.
  ReferenceMap(const MapParams& params, std::vector<PlanarPoint> positions,
               std::vector<Descriptor> descriptors);

  const MapParams& params() const { return params_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const MapEntry& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<MapEntry>& entries() const { return entries_; }

  int key_length() const { return key_length_; }
  /// Row-major (size() x key_length()) copy of all key counts.
  std::span<const std::int32_t> key_matrix() const { return key_matrix_; }

 private:
  MapParams params_;
  int key_length_;
  std::vector<MapEntry> entries_;
  std::vector<std::int32_t> key_matrix_;
};

struct DescribeStats {
  /// Edges passing through the query position (the position lies on a wall).
  std::size_t origin_on_edge = 0;
};

/// Reference path: casts all 360 rays against every edge. d = min hit distance,
/// or 0 when nothing is hit within `range`.
Descriptor osm_descriptor(PlanarPoint position, std::span<const Edge> edges, double range,
                          DescribeStats* stats = nullptr);
Descriptor osm_descriptor(PlanarPoint position, const OsmData& data, double range);

/// Uniform grid over building edges; only edges within `range` of a query are
/// tested, and each only over the integer degrees of its angular sector.
/// Produces exactly the same descriptor as the reference path.
class EdgeIndex {
 public:
  EdgeIndex(std::vector<Edge> edges, double range);

  Descriptor describe(PlanarPoint position, DescribeStats* stats = nullptr) const;

  double range() const { return range_; }
  std::size_t edge_count() const { return edges_.size(); }

 private:
  std::vector<Edge> edges_;
  double range_;
  double cell_;
  double min_x_ = 0.0, min_y_ = 0.0;
  std::int64_t nx_ = 0, ny_ = 0;
  std::vector<std::uint32_t> cell_start_;
  std::vector<std::uint32_t> cell_edges_;
};

/// Interpolated road points with near-duplicates (closer than interval / 2)
/// removed; the first occurrence in road order wins.
std::vector<PlanarPoint> road_positions(const std::vector<Polyline>& roads, double interval);

struct BuildStats {
  std::size_t positions = 0;
  std::size_t positions_on_edge = 0;
};

ReferenceMap build_reference_map(const OsmData& data, MapParams params, unsigned threads = 1,
                                 BuildStats* stats = nullptr);

/// Text format: header `osmloc-map v1 R=<f> lb=<f> bins=360 interval=<f> zone=<i> count=<n>`
/// then `x y d1 ... d360` per entry. Floats use the shortest round-trip form, so
/// write(read(write(m))) is byte-identical. Keys are recomputed on load.
void write_reference_map(std::ostream& out, const ReferenceMap& map);
ReferenceMap read_reference_map(std::istream& in);

void save_reference_map(const std::string& path, const ReferenceMap& map);
ReferenceMap load_reference_map(const std::string& path);

}  // namespace osmloc
