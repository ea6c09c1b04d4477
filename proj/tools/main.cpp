#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace osmloc::cli;

  CLI::App app{"osmloc: LiDAR global localization against OpenStreetMap"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  app.add_option("--range", config.range, "descriptor range R in metres")->capture_default_str();
  app.add_option("--bin", config.bin_length, "radial bin length l_b in metres")->capture_default_str();
  app.add_option("--interval", config.interval, "road sampling interval in metres")->capture_default_str();
  app.add_option("--topk", config.top_k, "stage-1 candidates re-ranked in stage 2")->capture_default_str();
  app.add_option("--class-id", config.class_id, "semantic label of building points")->capture_default_str();
  app.add_option("--radius", config.radius, "success radius in metres")->capture_default_str();
  app.add_option("--seed", config.seed, "random seed")->capture_default_str();
  app.add_option("--threads", config.threads, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  int status = 0;

  std::string osm, map_out;
  auto* build = app.add_subcommand("build-map", "build a reference map from an .osm extract");
  build->add_option("osm", osm, "OpenStreetMap XML file")->required();
  build->add_option("out", map_out, "output map file")->required();
  build->callback([&] { status = cmd_build_map(osm, map_out, config, std::cout, std::cerr); });

  std::string scan, label, desc_out;
  auto* describe = app.add_subcommand("describe", "compute the descriptor of one labelled scan");
  describe->add_option("scan", scan, "velodyne .bin")->required();
  describe->add_option("label", label, ".label file")->required();
  describe->add_option("out", desc_out, "output descriptor")->required();
  describe->callback([&] { status = cmd_describe(scan, label, desc_out, config, std::cout, std::cerr); });

  std::string map_in, scan_dir, label_dir, results_out;
  auto* loc = app.add_subcommand("localize", "localize every scan in a directory");
  loc->add_option("map", map_in, "reference map file")->required();
  loc->add_option("scan_dir", scan_dir, "directory of .bin scans")->required();
  loc->add_option("label_dir", label_dir, "directory of .label files")->required();
  loc->add_option("out", results_out, "results CSV")->required();
  loc->callback([&] { status = cmd_localize(map_in, scan_dir, label_dir, results_out, config, std::cout, std::cerr); });

  std::string results_in, gt_in, eval_dir;
  auto* eval = app.add_subcommand("eval", "score results against ground truth");
  eval->add_option("results", results_in, "results CSV from localize")->required();
  eval->add_option("gt", gt_in, "ground truth, one 'frame x y' per line")->required();
  eval->add_option("out_dir", eval_dir, "report directory")->required();
  eval->callback([&] { status = cmd_eval(results_in, gt_in, eval_dir, config, std::cout, std::cerr); });

  SynthOptions synth_opts;
  std::string synth_dir;
  auto* synth = app.add_subcommand("synth", "run the full pipeline on a synthetic city");
  synth->add_option("out_dir", synth_dir, "report directory")->required();
  synth->add_option("--blocks", synth_opts.blocks, "blocks per side")->capture_default_str();
  synth->add_option("--block-size", synth_opts.block_size, "block edge in metres")->capture_default_str();
  synth->add_option("--street-width", synth_opts.street_width, "street width in metres")->capture_default_str();
  synth->add_option("--perturb", synth_opts.perturb, "building inset fraction in [0, 1)")->capture_default_str();
  synth->add_option("--queries", synth_opts.queries, "number of queries")->capture_default_str();
  synth->add_flag("--noise", synth_opts.noise, "add range noise and dropout to queries");
  synth->add_option("--noise-range", synth_opts.noise_model.range_noise, "uniform range noise half-width (m)")
      ->capture_default_str();
  synth->add_option("--dropout", synth_opts.noise_model.dropout, "fraction of bins dropped")->capture_default_str();
  synth->add_flag("--save-map", synth_opts.save_map, "also write map.osmloc");
  synth->callback([&] { status = cmd_synth(config, synth_opts, synth_dir, std::cout, std::cerr); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  return status;
}
