#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "osmloc/retrieval.hpp"
#include "osmloc/synth.hpp"

namespace osmloc::cli {

/// Shared flags. Defaults: 50 m range,
/// 5 m radial bins, 1 m road sampling, 200 stage-one keys, 5 m success radius.
struct RunConfig {
  double range = 50.0;
  double bin_length = 5.0;
  double interval = 1.0;
  std::size_t top_k = kDefaultTopK;
  std::uint16_t class_id = 50;
  double radius = 5.0;
  std::uint64_t seed = 1;
  unsigned threads = 1;

  /// Throws ConfigError with a one-line reason.
  void validate() const;
};

struct SynthOptions {
  int blocks = 6;
  double block_size = 20.0;
  double street_width = 10.0;
  double perturb = 0.3;
  std::size_t queries = 200;
  bool noise = false;
  NoiseModel noise_model;
  bool save_map = false;
};

/// Rows emitted per frame by `localize`.
inline constexpr std::size_t kResultsPerFrame = 10;

// Each command returns a process exit status; diagnostics go to `err` as a
// single line, progress to `out`.
int cmd_build_map(const std::string& osm_path, const std::string& out_path, const RunConfig& config,
                  std::ostream& out, std::ostream& err);
int cmd_describe(const std::string& scan_path, const std::string& label_path, const std::string& out_path,
                 const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_localize(const std::string& map_path, const std::string& scan_dir, const std::string& label_dir,
                 const std::string& out_path, const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_eval(const std::string& results_path, const std::string& gt_path, const std::filesystem::path& out_dir,
             const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_synth(const RunConfig& config, const SynthOptions& options, const std::filesystem::path& out_dir,
              std::ostream& out, std::ostream& err);

}  // namespace osmloc::cli
