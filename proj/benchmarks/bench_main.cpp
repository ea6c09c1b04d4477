#include <benchmark/benchmark.h>

#include <random>

#include "osmloc/reference_map.hpp"
#include "osmloc/retrieval.hpp"
#include "osmloc/scan.hpp"
#include "osmloc/synth.hpp"

namespace {

using namespace osmloc;

// 10x10 blocks of 25 m give a bit over 7000 road points; keep exactly 7000.
struct Fixture {
  SynthWorld world;
  ReferenceMap map{MapParams{}, {}, {}};
  std::vector<Descriptor> queries;

  Fixture() {
    SynthParams p;
    p.seed = 3;
    p.blocks = 10;
    p.block_size = 25.0;
    p.pose_count = 64;
    world = generate_synth_world(p);
    const ReferenceMap full = build_reference_map(world.to_osm(), MapParams{});
    std::vector<PlanarPoint> pos;
    std::vector<Descriptor> desc;
    for (std::size_t i = 0; i < 7000 && i < full.size(); ++i) {
      pos.push_back(full[i].position);
      desc.push_back(full[i].descriptor);
    }
    map = ReferenceMap(full.params(), std::move(pos), std::move(desc));
    std::mt19937_64 rng(9);
    for (const Pose& pose : world.poses) queries.push_back(add_noise(simulate_scan(world, pose, 50.0), {}, 50.0, rng));
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_Stage1(benchmark::State& state) {
  const Fixture& f = fixture();
  std::size_t i = 0;
  for (auto _ : state) {
    const Key k = make_key(f.queries[i++ % f.queries.size()], f.map.params().context());
    benchmark::DoNotOptimize(stage1_candidates(k, f.map, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_Stage1)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_Stage2(benchmark::State& state) {
  const Fixture& f = fixture();
  std::vector<std::vector<std::size_t>> cands;
  for (const Descriptor& q : f.queries) {
    cands.push_back(stage1_candidates(make_key(q, f.map.params().context()), f.map, 200));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const std::size_t q = i++ % f.queries.size();
    benchmark::DoNotOptimize(stage2_rerank(f.queries[q], f.map, cands[q]));
  }
}
BENCHMARK(BM_Stage2)->Unit(benchmark::kMillisecond);

void BM_Localize(benchmark::State& state) {
  const Fixture& f = fixture();
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(localize(f.queries[i++ % f.queries.size()], f.map, 200));
  state.counters["map_entries"] = static_cast<double>(f.map.size());
}
BENCHMARK(BM_Localize)->Unit(benchmark::kMillisecond);

void BM_RotatedMatch(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> v(0.0, 50.0);
  Descriptor a, b;
  for (int i = 0; i < kAngularBins; ++i) {
    a[i] = v(rng);
    b[i] = v(rng);
  }
  const RotatedQuery q(a);
  for (auto _ : state) benchmark::DoNotOptimize(q.match(b));
}
BENCHMARK(BM_RotatedMatch);

void BM_OsmDescriptorBrute(benchmark::State& state) {
  const Fixture& f = fixture();
  const std::vector<Edge> edges = building_edges(f.world.buildings);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(osm_descriptor(f.map[i++ % f.map.size()].position, edges, 50.0));
}
BENCHMARK(BM_OsmDescriptorBrute)->Unit(benchmark::kMicrosecond);

void BM_OsmDescriptorIndexed(benchmark::State& state) {
  const Fixture& f = fixture();
  const EdgeIndex index(building_edges(f.world.buildings), 50.0);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(index.describe(f.map[i++ % f.map.size()].position));
}
BENCHMARK(BM_OsmDescriptorIndexed)->Unit(benchmark::kMicrosecond);

void BM_LidarDescriptor(benchmark::State& state) {
  // Roughly one KITTI frame's worth of building points.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<float> c(-60.0F, 60.0F);
  PointCloud cloud;
  for (int i = 0; i < 30000; ++i) cloud.points.push_back({c(rng), c(rng), 1.0F});
  for (auto _ : state) benchmark::DoNotOptimize(lidar_descriptor(cloud, 50.0));
}
BENCHMARK(BM_LidarDescriptor)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
