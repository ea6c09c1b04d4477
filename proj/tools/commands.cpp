#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <vector>

#include "csv_io.hpp"
#include "osmloc/error.hpp"
#include "osmloc/eval.hpp"
#include "osmloc/osm.hpp"
#include "osmloc/parallel.hpp"
#include "osmloc/reference_map.hpp"
#include "osmloc/scan.hpp"

namespace osmloc::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

MapParams map_params(const RunConfig& c) {
  MapParams p;
  p.range = c.range;
  p.bin_length = c.bin_length;
  p.interval = c.interval;
  return p;
}

// Runs a command body, turning any exception into a one-line diagnostic.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: " << msg << '\n';
    return 1;
  }
}

struct Frame {
  std::size_t id = 0;
  fs::path scan;
  fs::path label;
};

std::map<std::string, fs::path> files_by_stem(const fs::path& dir, const std::string& ext) {
  if (!fs::is_directory(dir)) throw Error("no such directory: " + dir.string());
  std::map<std::string, fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ext) out[entry.path().stem().string()] = entry.path();
  }
  return out;
}

// KITTI-style numeric stems become frame ids; otherwise the sorted ordinal is used.
std::vector<Frame> pair_frames(const fs::path& scan_dir, const fs::path& label_dir) {
  const auto scans = files_by_stem(scan_dir, ".bin");
  const auto labels = files_by_stem(label_dir, ".label");
  for (const auto& [stem, path] : scans) {
    if (!labels.contains(stem)) throw InputError("frame " + stem + ": scan has no matching .label file");
  }
  for (const auto& [stem, path] : labels) {
    if (!scans.contains(stem)) throw InputError("frame " + stem + ": label has no matching .bin scan");
  }
  const bool numeric = std::all_of(scans.begin(), scans.end(), [](const auto& kv) {
    return !kv.first.empty() && kv.first.size() < 19 &&
           std::all_of(kv.first.begin(), kv.first.end(), [](char c) { return c >= '0' && c <= '9'; });
  });
  std::vector<Frame> frames;
  std::size_t ordinal = 0;
  std::set<std::size_t> seen;
  for (const auto& [stem, path] : scans) {
    const std::size_t id = numeric ? std::stoull(stem) : ordinal;
    if (!seen.insert(id).second) throw InputError("frame " + stem + ": duplicate frame id " + std::to_string(id));
    frames.push_back({id, path, labels.at(stem)});
    ++ordinal;
  }
  std::sort(frames.begin(), frames.end(), [](const Frame& a, const Frame& b) { return a.id < b.id; });
  return frames;
}

Descriptor describe_frame(const fs::path& scan, const fs::path& label, const RunConfig& config) {
  const PointCloud cloud = load_velodyne_bin(scan.string());
  const LabelSet labels = load_labels(label.string());
  if (cloud.size() != labels.size()) {
    throw InputError("frame " + scan.stem().string() + ": " + std::to_string(labels.size()) + " labels for " +
                     std::to_string(cloud.size()) + " points");
  }
  return lidar_descriptor(filter_building_points(cloud, labels, config.class_id), config.range);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
  if (!f) throw Error("write failed: " + path.string());
}

}  // namespace

void RunConfig::validate() const {
  (void)ContextParams(range, bin_length);
  if (!(interval > 0.0)) throw ConfigError("--interval must be positive");
  if (top_k == 0) throw ConfigError("--topk must be at least 1");
  if (!(radius > 0.0)) throw ConfigError("--radius must be positive");
}

int cmd_build_map(const std::string& osm_path, const std::string& out_path, const RunConfig& config,
                  std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const auto start = Clock::now();
    const OsmData data = load_osm(osm_path);
    BuildStats stats;
    const ReferenceMap map = build_reference_map(data, map_params(config), config.threads, &stats);
    save_reference_map(out_path, map);
    out << "entries: " << map.size() << '\n';
    out << "buildings: " << data.buildings.size() << ", roads: " << data.roads.size() << ", zone: " << data.zone
        << '\n';
    if (data.skipped_ways > 0) out << "warning: skipped " << data.skipped_ways << " ways with unresolved nodes\n";
    if (stats.positions_on_edge > 0) {
      out << "warning: " << stats.positions_on_edge << " road points lie on a building edge\n";
    }
    out << "build time: " << seconds_since(start) << " s\n";
    return 0;
  });
}

int cmd_describe(const std::string& scan_path, const std::string& label_path, const std::string& out_path,
                 const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const Descriptor d = describe_frame(scan_path, label_path, config);
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error("cannot write " + out_path);
    write_descriptor(f, d);
    out << "nonzero bins: " << d.nonzero_count() << '\n';
    return 0;
  });
}

int cmd_localize(const std::string& map_path, const std::string& scan_dir, const std::string& label_dir,
                 const std::string& out_path, const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const ReferenceMap map = load_reference_map(map_path);
    RunConfig effective = config;
    effective.range = map.params().range;
    const auto frames = pair_frames(scan_dir, label_dir);

    std::vector<LocalizationResult> results(frames.size());
    const auto start = Clock::now();
    parallel_for(frames.size(), config.threads, [&](std::size_t i) {
      results[i] = localize(describe_frame(frames[i].scan, frames[i].label, effective), map, config.top_k);
    });
    const double elapsed = seconds_since(start);

    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error("cannot write " + out_path);
    f << kResultsHeader << '\n';
    for (std::size_t i = 0; i < frames.size(); ++i) write_results_rows(f, frames[i].id, results[i], kResultsPerFrame);
    if (!f) throw Error("write failed: " + out_path);
    out << "frames: " << frames.size() << ", map entries: " << map.size() << '\n';
    if (!frames.empty()) out << "time per frame: " << elapsed / static_cast<double>(frames.size()) << " s\n";
    return 0;
  });
}

int cmd_eval(const std::string& results_path, const std::string& gt_path, const fs::path& out_dir,
             const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const auto results = read_results(results_path);
    const auto truth = read_ground_truth(gt_path);

    std::vector<std::string> missing;
    for (const auto& [frame, r] : results) {
      if (!truth.contains(frame)) missing.push_back(std::to_string(frame) + " (no ground truth)");
    }
    for (const auto& [frame, p] : truth) {
      if (!results.contains(frame)) missing.push_back(std::to_string(frame) + " (no result)");
    }
    if (!missing.empty()) {
      std::string list;
      for (std::size_t i = 0; i < missing.size() && i < 20; ++i) list += (i ? ", " : "") + missing[i];
      if (missing.size() > 20) list += ", ...";
      throw InputError("frame sets differ: " + list);
    }

    std::vector<LocalizationResult> ordered;
    std::vector<PlanarPoint> gt;
    std::vector<std::size_t> frames;
    for (const auto& [frame, r] : results) {
      ordered.push_back(r);
      gt.push_back(truth.at(frame));
      frames.push_back(frame);
    }
    const EvalReport report = evaluate(ordered, gt, config.radius, {1, 5, 10}, frames);
    emit_report(report, out_dir);
    out << "queries: " << report.per_query.size() << '\n';
    if (!report.per_query.empty()) {
      for (const AccuracyRow& row : report.summary) out << "top-" << row.n << ": " << row.percent << " %\n";
    }
    return 0;
  });
}

int cmd_synth(const RunConfig& config, const SynthOptions& options, const fs::path& out_dir, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    SynthParams params;
    params.seed = config.seed;
    params.blocks = options.blocks;
    params.block_size = options.block_size;
    params.street_width = options.street_width;
    params.perturb = options.perturb;
    params.pose_count = 0;
    const SynthWorld world = generate_synth_world(params);

    const auto build_start = Clock::now();
    const ReferenceMap map = build_reference_map(world.to_osm(), map_params(config), config.threads);
    const double build_s = seconds_since(build_start);

    // Queries sit on map points with an integer yaw, optionally degraded.
    std::mt19937_64 rng(config.seed ^ 0x5eedULL);
    std::uniform_int_distribution<std::size_t> pick(0, map.size() - 1);
    std::uniform_int_distribution<int> yaw(0, kAngularBins - 1);
    std::vector<Descriptor> queries;
    std::vector<PlanarPoint> truth;
    std::vector<double> describe_s;
    for (std::size_t q = 0; q < options.queries; ++q) {
      const PlanarPoint at = map[pick(rng)].position;
      const Pose pose{at.x, at.y, static_cast<double>(yaw(rng))};
      const auto t0 = Clock::now();
      Descriptor d = simulate_scan(world, pose, config.range);
      describe_s.push_back(seconds_since(t0));
      if (options.noise) d = add_noise(d, options.noise_model, config.range, rng);
      queries.push_back(d);
      truth.push_back(at);
    }

    BatchResults batch = localize_batch(queries, map, config.top_k, true, config.threads);
    batch.timing.describe_s_per_frame = median(describe_s);
    const EvalReport two = evaluate(batch.two_stage, truth, config.radius);
    const EvalReport one = evaluate(batch.key_only, truth, config.radius);
    emit_report(two, out_dir);

    std::string stages = "method,n,accuracy_percent\n";
    for (const auto& [name, report] : {std::pair{"1-stage", &one}, std::pair{"2-stage", &two}}) {
      for (const AccuracyRow& row : report->summary) {
        char pct[32];
        std::snprintf(pct, sizeof(pct), "%.2f", row.percent);
        stages += std::string(name) + "," + std::to_string(row.n) + "," + pct + "\n";
      }
    }
    write_text(out_dir / "stages.csv", stages);

    std::string run = "seed=" + std::to_string(config.seed) + "\nblocks=" + std::to_string(options.blocks) +
                      "\nblock_size=" + format_double(options.block_size) +
                      "\nstreet_width=" + format_double(options.street_width) +
                      "\nperturb=" + format_double(options.perturb) + "\nrange=" + format_double(config.range) +
                      "\nbin=" + format_double(config.bin_length) + "\ninterval=" + format_double(config.interval) +
                      "\ntopk=" + std::to_string(config.top_k) + "\nradius=" + format_double(config.radius) +
                      "\nqueries=" + std::to_string(options.queries) + "\nmap_entries=" + std::to_string(map.size()) +
                      "\nnoise=" + (options.noise ? "on" : "off");
    if (options.noise) {
      run += "\nnoise_range=" + format_double(options.noise_model.range_noise) +
             "\ndropout=" + format_double(options.noise_model.dropout);
    }
    run += "\n";
    write_text(out_dir / "run.txt", run);
    if (options.save_map) save_reference_map((out_dir / "map.osmloc").string(), map);

    out << "map entries: " << map.size() << " (built in " << build_s << " s)\n";
    out << "queries: " << options.queries << (options.noise ? " (noisy)" : "") << '\n';
    for (std::size_t n : {1, 5, 10}) {
      out << "top-" << n << ": 2-stage " << two.top(n) << " %, 1-stage " << one.top(n) << " %\n";
    }
    if (config.threads == 1) {
      out << "median time: simulate " << batch.timing.describe_s_per_frame << " s, stage-1 "
          << batch.timing.stage1_s << " s, stage-2 " << batch.timing.stage2_s << " s\n";
    }
    return 0;
  });
}

}  // namespace osmloc::cli
