#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "osmloc/descriptor.hpp"
#include "osmloc/geo.hpp"
#include "osmloc/reference_map.hpp"
#include "osmloc/retrieval.hpp"

namespace osmloc {

inline constexpr double kDefaultSuccessRadius = 5.0;

struct QueryOutcome {
  std::size_t frame = 0;
  /// 1-based rank of the first candidate within the radius, if any.
  std::optional<std::size_t> rank_success;
  double rank1_error_m = 0.0;
  PlanarPoint truth;
};

struct AccuracyRow {
  std::size_t n = 0;
  double percent = 0.0;
};

/// Wall-clock seconds; medians over queries.
struct StageTiming {
  double describe_s_per_frame = 0.0;
  double stage1_s = 0.0;
  double stage2_s = 0.0;
};

struct EvalReport {
  std::vector<QueryOutcome> per_query;
  std::vector<AccuracyRow> summary;
  StageTiming timing;
  double radius = kDefaultSuccessRadius;

  /// Accuracy percentage for top-n; throws InputError if n was not evaluated.
  double top(std::size_t n) const;
};

/// A query succeeds at N when any of its first N ranked positions lies within
/// `radius` of the ground truth. `frames` labels the queries (defaults to 0..n-1).
/// Throws InputError when the inputs are not aligned.
EvalReport evaluate(std::span<const LocalizationResult> results, std::span<const PlanarPoint> truth,
                    double radius = kDefaultSuccessRadius, std::vector<std::size_t> ns = {1, 5, 10},
                    std::span<const std::size_t> frames = {});

/// Writes summary.csv, per_query.csv and trajectory.svg into `out_dir`
/// (created if needed). Errors carry the offending path.
void emit_report(const EvalReport& report, const std::filesystem::path& out_dir);

struct BatchResults {
  std::vector<LocalizationResult> two_stage;
  /// Filled only when the key-only baseline was requested.
  std::vector<LocalizationResult> key_only;
  StageTiming timing;
};

/// Localizes every query. With threads == 1 the per-stage medians in `timing`
/// are meaningful; with more threads, results are identical but timing is not
/// recorded.
BatchResults localize_batch(std::span<const Descriptor> queries, const ReferenceMap& map,
                            std::size_t k = kDefaultTopK, bool key_only_baseline = false,
                            unsigned threads = 1);

double median(std::vector<double> values);

}  // namespace osmloc
