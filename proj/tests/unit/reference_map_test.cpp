#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "osmloc/error.hpp"
#include "osmloc/reference_map.hpp"
#include "osmloc/synth.hpp"
#include "test_util.hpp"

namespace osmloc {
namespace {

Ring square(PlanarPoint c, double half) {
  return {{c.x - half, c.y - half}, {c.x + half, c.y - half}, {c.x + half, c.y + half},
          {c.x - half, c.y + half}, {c.x - half, c.y - half}};
}

PlanarPoint rotate_about(PlanarPoint p, PlanarPoint c, int degrees) {
  const double a = degrees * M_PI / 180.0;
  const double dx = p.x - c.x, dy = p.y - c.y;
  return {c.x + dx * std::cos(a) - dy * std::sin(a), c.y + dx * std::sin(a) + dy * std::cos(a)};
}

std::vector<Ring> random_buildings(std::mt19937_64& rng, int count, double spread) {
  std::uniform_real_distribution<double> coord(-spread, spread);
  std::uniform_real_distribution<double> size(2.0, 12.0);
  std::vector<Ring> rings;
  for (int i = 0; i < count; ++i) {
    const PlanarPoint c{coord(rng), coord(rng)};
    const double w = size(rng), h = size(rng);
    rings.push_back({{c.x, c.y}, {c.x + w, c.y}, {c.x + w, c.y + h}, {c.x, c.y + h}, {c.x, c.y}});
  }
  return rings;
}

TEST(OsmDescriptor, InsideSquare) {
  OsmData data;
  data.buildings.push_back(square({0, 0}, 10.0));
  const Descriptor d = osm_descriptor({0, 0}, data, 50.0);
  EXPECT_NEAR(d[0], 10.0, 1e-9);
  EXPECT_NEAR(d[45], std::sqrt(200.0), 1e-9);
  EXPECT_NEAR(d[90], 10.0, 1e-9);
  EXPECT_NEAR(d[30], 10.0 / std::cos(30 * M_PI / 180), 1e-9);
  for (int i = 0; i < kAngularBins; ++i) EXPECT_GT(d[i], 0.0);
}

TEST(OsmDescriptor, NoBuildingsAndOutOfRange) {
  EXPECT_EQ(osm_descriptor({0, 0}, OsmData{}, 50.0), Descriptor{});
  OsmData wall;
  wall.buildings.push_back({{60, -500}, {61, -500}, {61, 500}, {60, 500}, {60, -500}});
  EXPECT_EQ(osm_descriptor({0, 0}, wall, 50.0), Descriptor{});
  // The same wall within a larger range is seen.
  EXPECT_NEAR(osm_descriptor({0, 0}, wall, 100.0)[0], 60.0, 1e-9);
}

TEST(OsmDescriptor, RangeAndLengthInvariant) {
  std::mt19937_64 rng(4);
  const auto rings = random_buildings(rng, 40, 60.0);
  const auto edges = building_edges(rings);
  std::uniform_real_distribution<double> coord(-40.0, 40.0);
  for (int t = 0; t < 20; ++t) {
    const Descriptor d = osm_descriptor({coord(rng), coord(rng)}, edges, 50.0);
    for (double v : d.values()) EXPECT_TRUE(v == 0.0 || (v > 0.0 && v <= 50.0));
  }
}

TEST(OsmDescriptor, RotationEquivariance) {
  std::mt19937_64 rng(8);
  const PlanarPoint center{3.0, -2.0};
  std::uniform_int_distribution<int> angle(1, 359);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rings = random_buildings(rng, 25, 45.0);
    const int k = angle(rng);
    std::vector<Ring> rotated = rings;
    for (Ring& r : rotated)
      for (PlanarPoint& p : r) p = rotate_about(p, center, k);
    const Descriptor base = osm_descriptor(center, building_edges(rings), 50.0);
    const Descriptor turned = osm_descriptor(center, building_edges(rotated), 50.0);
    const Descriptor expected = rotate(base, -k);
    int mismatched = 0;
    for (int i = 0; i < kAngularBins; ++i) {
      // A ray grazing a corner can flip between hit and miss under rounding.
      if ((expected[i] == 0.0) != (turned[i] == 0.0)) {
        ++mismatched;
        continue;
      }
      EXPECT_NEAR(turned[i], expected[i], 1e-6) << "k=" << k << " bin " << i;
    }
    EXPECT_LE(mismatched, 2);
  }
}

TEST(OsmDescriptor, InsideConvexRingBoundedByCircumradius) {
  OsmData data;
  data.buildings.push_back({{0, 0}, {30, 0}, {40, 20}, {10, 35}, {-5, 15}, {0, 0}});
  const PlanarPoint inside{15, 15};
  double circumradius = 0.0;
  for (const auto& p : data.buildings[0]) circumradius = std::max(circumradius, distance(p, inside));
  const Descriptor d = osm_descriptor(inside, data, 50.0);
  for (double v : d.values()) {
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, circumradius + 1e-9);
  }
}

TEST(OsmDescriptor, MinOverEdgePartitions) {
  std::mt19937_64 rng(12);
  const auto edges = building_edges(random_buildings(rng, 30, 50.0));
  const std::span<const Edge> all(edges);
  const PlanarPoint origin{0.5, -0.25};
  const Descriptor full = osm_descriptor(origin, all, 50.0);
  const Descriptor left = osm_descriptor(origin, all.first(edges.size() / 3), 50.0);
  const Descriptor right = osm_descriptor(origin, all.subspan(edges.size() / 3), 50.0);
  for (int i = 0; i < kAngularBins; ++i) {
    double expected = 0.0;
    if (left[i] == 0.0) expected = right[i];
    else if (right[i] == 0.0) expected = left[i];
    else expected = std::min(left[i], right[i]);
    EXPECT_EQ(full[i], expected);
  }
}

TEST(EdgeIndex, MatchesReferencePathExactly) {
  std::mt19937_64 rng(99);
  const auto edges = building_edges(random_buildings(rng, 200, 150.0));
  const EdgeIndex index(edges, 50.0);
  std::uniform_real_distribution<double> coord(-200.0, 200.0);
  for (int t = 0; t < 200; ++t) {
    const PlanarPoint p{coord(rng), coord(rng)};
    EXPECT_EQ(index.describe(p), osm_descriptor(p, edges, 50.0)) << p.x << "," << p.y;
  }
  // Query sitting exactly on a building vertex and on an edge.
  const PlanarPoint vertex = edges[0].p1;
  EXPECT_EQ(index.describe(vertex), osm_descriptor(vertex, edges, 50.0));
  const PlanarPoint mid{(edges[0].p1.x + edges[0].p2.x) / 2, (edges[0].p1.y + edges[0].p2.y) / 2};
  DescribeStats stats;
  EXPECT_EQ(index.describe(mid, &stats), osm_descriptor(mid, edges, 50.0));
  EXPECT_GE(stats.origin_on_edge, 1u);
}

TEST(RoadPositions, StraightRoad) {
  EXPECT_EQ(road_positions({{{0, 0}, {10, 0}}}, 1.0).size(), 11u);
}

TEST(RoadPositions, DeduplicatesAcrossRoads) {
  // Two roads sharing an endpoint and a crossing road.
  const std::vector<Polyline> roads{{{0, 0}, {10, 0}}, {{10, 0}, {20, 0}}, {{5, -5}, {5, 5}}};
  const auto pts = road_positions(roads, 1.0);
  EXPECT_EQ(pts.size(), 11u + 10u + 10u);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) EXPECT_GE(distance(pts[i], pts[j]), 0.5);
}

// Expected counts from tests/oracles/grid_positions.py.
TEST(RoadPositions, GridFixtureMatchesOracle) {
  struct Case {
    int blocks;
    double block, street, interval;
    std::size_t expected;
  };
  for (const Case& c : {Case{4, 20, 10, 1.0, 1185}, Case{2, 20, 10, 1.0, 357}, Case{3, 17.5, 7, 1.5, 384}}) {
    SynthParams p;
    p.blocks = c.blocks;
    p.block_size = c.block;
    p.street_width = c.street;
    p.pose_count = 0;
    const SynthWorld world = generate_synth_world(p);
    EXPECT_EQ(road_positions(world.roads, c.interval).size(), c.expected) << c.blocks;
  }
}

TEST(BuildReferenceMap, OneRoadOneBuilding) {
  OsmData data;
  data.roads.push_back({{0, 0}, {10, 0}});
  data.buildings.push_back(square({5, 12}, 4.0));
  BuildStats stats;
  const ReferenceMap map = build_reference_map(data, {}, 1, &stats);
  ASSERT_EQ(map.size(), 11u);
  EXPECT_EQ(stats.positions, 11u);
  EXPECT_EQ(map.key_length(), 10);
  for (std::size_t i = 0; i < map.size(); ++i) {
    EXPECT_EQ(map[i].key, make_key(map[i].descriptor, map.params().context()));
    EXPECT_EQ(map[i].descriptor, osm_descriptor(map[i].position, data, 50.0));
  }
  EXPECT_NEAR(map[5].descriptor[90], 8.0, 1e-9);
}

TEST(BuildReferenceMap, ParallelBuildIsIdentical) {
  SynthParams p;
  p.blocks = 3;
  const auto data = generate_synth_world(p).to_osm();
  const ReferenceMap serial = build_reference_map(data, {}, 1);
  const ReferenceMap threaded = build_reference_map(data, {}, 4);
  ASSERT_EQ(serial.size(), threaded.size());
  for (std::size_t i = 0; i < serial.size(); ++i) EXPECT_EQ(serial[i].descriptor, threaded[i].descriptor);
}

TEST(BuildReferenceMap, RejectsBadConfig) {
  OsmData data;
  data.roads.push_back({{0, 0}, {10, 0}});
  MapParams bad;
  bad.bin_length = 3.0;
  EXPECT_THROW(build_reference_map(data, bad), ConfigError);
  bad = {};
  bad.interval = 0.0;
  EXPECT_THROW(build_reference_map(data, bad), ConfigError);
}

TEST(MapFile, RoundTripIsByteIdentical) {
  SynthParams p;
  p.blocks = 2;
  MapParams params;
  params.interval = 2.5;
  const ReferenceMap map = build_reference_map(generate_synth_world(p).to_osm(), params);
  std::ostringstream first;
  write_reference_map(first, map);
  std::istringstream in(first.str());
  const ReferenceMap loaded = read_reference_map(in);
  std::ostringstream second;
  write_reference_map(second, loaded);
  EXPECT_EQ(first.str(), second.str());
  ASSERT_EQ(loaded.size(), map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    EXPECT_EQ(loaded[i].descriptor, map[i].descriptor);
    EXPECT_EQ(loaded[i].key, map[i].key);
  }
  EXPECT_EQ(first.str().substr(0, first.str().find('\n')),
            "osmloc-map v1 R=50 lb=5 bins=360 interval=2.5 zone=0 count=" + std::to_string(map.size()));
}

TEST(MapFile, RejectsMalformedInput) {
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return read_reference_map(in);
  };
  EXPECT_THROW(read(""), FormatError);
  EXPECT_THROW(read("osmloc-map v2 R=50 lb=5 bins=360 interval=1 zone=0 count=0\n"), FormatError);
  EXPECT_THROW(read("osmloc-map v1 R=50 lb=5 bins=180 interval=1 zone=0 count=0\n"), FormatError);
  EXPECT_THROW(read("osmloc-map v1 R=50 lb=5 bins=360 interval=1 zone=0 count=1\n"), FormatError);
  EXPECT_THROW(read("osmloc-map v1 R=50 lb=5 bins=360 interval=1 zone=0 count=1\n1 2 3\n"), FormatError);
  EXPECT_THROW(read("osmloc-map v1 R=50 lb=3 bins=360 interval=1 zone=0 count=0\n"), ConfigError);
  EXPECT_NO_THROW(read("osmloc-map v1 R=50 lb=5 bins=360 interval=1 zone=0 count=0\n"));
}

}  // namespace
}  // namespace osmloc
