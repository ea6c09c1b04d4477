#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "osmloc/geo.hpp"

namespace osmloc {

using Ring = std::vector<PlanarPoint>;
using Polyline = std::vector<PlanarPoint>;

/// Building rings and road polylines of one extract, projected into a single
/// planar frame. Rings are closed (front == back, >= 4 vertices); polylines
/// have >= 2 vertices.
struct OsmData {
  std::vector<Ring> buildings;
  std::vector<Polyline> roads;
  /// UTM zone of the frame; 0 for a local frame (synthetic data).
  int zone = 0;
  /// Ways dropped because they referenced nodes missing from the extract.
  std::size_t skipped_ways = 0;
};

struct OsmParseOptions {
  /// Raise EmptyLayerError when the corresponding layer comes out empty.
  bool require_buildings = true;
  bool require_roads = true;
};

/// Parses an OSM v0.6 XML document.
///
/// Buildings are closed ways tagged building=* plus every ring (outer and
/// inner) of type=multipolygon relations tagged building=*. Roads are ways
/// tagged highway=*. All nodes are projected with one UTM zone chosen from the
/// <bounds> centre longitude (mean node longitude when bounds are absent).
///
/// Throws ParseError (with byte offset) on malformed XML and EmptyLayerError
/// when a required layer is empty.
OsmData parse_osm(std::string_view xml, const OsmParseOptions& options = {});

/// Reads and parses a file; throws Error("no such file: ...") if it cannot be opened.
OsmData load_osm(const std::string& path, const OsmParseOptions& options = {});

/// Every non-degenerate wall segment of the rings, in ring order.
std::vector<Edge> building_edges(const std::vector<Ring>& rings);

}  // namespace osmloc
