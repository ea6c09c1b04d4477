#include "osmloc/eval.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include "osmloc/error.hpp"
#include "osmloc/parallel.hpp"

namespace osmloc {

namespace {

std::string fixed(double v, int precision) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, precision);
  return std::string(buf, ptr);
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void check_written(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error("write failed: " + path.string());
}

void write_svg(const EvalReport& report, const std::filesystem::path& path) {
  constexpr double kCanvas = 800.0;
  constexpr double kMargin = 20.0;

  double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
  double max_x = -min_x, max_y = -min_x;
  for (const QueryOutcome& q : report.per_query) {
    min_x = std::min(min_x, q.truth.x);
    min_y = std::min(min_y, q.truth.y);
    max_x = std::max(max_x, q.truth.x);
    max_y = std::max(max_y, q.truth.y);
  }
  const double extent = report.per_query.empty() ? 1.0 : std::max({max_x - min_x, max_y - min_y, 1e-9});
  const double scale = (kCanvas - 2 * kMargin) / extent;
  auto sx = [&](double x) { return fixed(kMargin + (x - min_x) * scale, 2); };
  auto sy = [&](double y) { return fixed(kCanvas - kMargin - (y - min_y) * scale, 2); };

  auto out = open_for_write(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  out << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  if (!report.per_query.empty()) {
    out << "<path fill=\"none\" stroke=\"black\" stroke-width=\"1\" d=\"";
    for (std::size_t i = 0; i < report.per_query.size(); ++i) {
      const QueryOutcome& q = report.per_query[i];
      out << (i == 0 ? "M" : " L") << sx(q.truth.x) << ',' << sy(q.truth.y);
    }
    out << "\"/>\n";
  }
  // Green: localized by the top candidate within the radius; black otherwise.
  for (const QueryOutcome& q : report.per_query) {
    const bool success = q.rank_success && *q.rank_success == 1;
    out << "<circle cx=\"" << sx(q.truth.x) << "\" cy=\"" << sy(q.truth.y) << "\" r=\"2\" fill=\""
        << (success ? "#00b050" : "#000000") << "\"/>\n";
  }
  out << "</svg>\n";
  check_written(out, path);
}

}  // namespace

double EvalReport::top(std::size_t n) const {
  for (const AccuracyRow& row : summary) {
    if (row.n == n) return row.percent;
  }
  throw InputError("top-" + std::to_string(n) + " was not evaluated");
}

EvalReport evaluate(std::span<const LocalizationResult> results, std::span<const PlanarPoint> truth,
                    double radius, std::vector<std::size_t> ns, std::span<const std::size_t> frames) {
  if (results.size() != truth.size()) {
    throw InputError("evaluate: " + std::to_string(results.size()) + " results but " +
                     std::to_string(truth.size()) + " ground-truth positions");
  }
  if (!frames.empty() && frames.size() != results.size()) {
    throw InputError("evaluate: frame labels do not match the number of results");
  }
  if (!(radius > 0.0)) throw ConfigError("radius must be positive");
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  EvalReport report;
  report.radius = radius;
  std::vector<std::size_t> hits(ns.size(), 0);
  for (std::size_t q = 0; q < results.size(); ++q) {
    const auto& ranked = results[q].ranked;
    QueryOutcome outcome;
    outcome.frame = frames.empty() ? q : frames[q];
    outcome.truth = truth[q];
    outcome.rank1_error_m =
        ranked.empty() ? std::numeric_limits<double>::infinity() : distance(ranked.front().position, truth[q]);
    for (std::size_t r = 0; r < ranked.size(); ++r) {
      if (distance(ranked[r].position, truth[q]) <= radius) {
        outcome.rank_success = r + 1;
        break;
      }
    }
    for (std::size_t j = 0; j < ns.size(); ++j) {
      if (outcome.rank_success && *outcome.rank_success <= ns[j]) ++hits[j];
    }
    report.per_query.push_back(outcome);
  }
  for (std::size_t j = 0; j < ns.size(); ++j) {
    const double pct = results.empty() ? 0.0 : 100.0 * static_cast<double>(hits[j]) / static_cast<double>(results.size());
    report.summary.push_back({ns[j], pct});
  }
  return report;
}

void emit_report(const EvalReport& report, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create directory " + out_dir.string() + ": " + ec.message());

  const auto summary_path = out_dir / "summary.csv";
  {
    auto out = open_for_write(summary_path);
    out << "n,accuracy_percent\n";
    if (!report.per_query.empty()) {
      for (const AccuracyRow& row : report.summary) out << row.n << ',' << fixed(row.percent, 2) << '\n';
    }
    check_written(out, summary_path);
  }

  const auto per_query_path = out_dir / "per_query.csv";
  {
    auto out = open_for_write(per_query_path);
    out << "frame,rank_success,rank1_error_m\n";
    for (const QueryOutcome& q : report.per_query) {
      out << q.frame << ',';
      if (q.rank_success) out << *q.rank_success;
      out << ',' << fixed(q.rank1_error_m, 3) << '\n';
    }
    check_written(out, per_query_path);
  }

  write_svg(report, out_dir / "trajectory.svg");
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (values.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

BatchResults localize_batch(std::span<const Descriptor> queries, const ReferenceMap& map, std::size_t k,
                            bool key_only_baseline, unsigned threads) {
  using Clock = std::chrono::steady_clock;
  BatchResults out;
  out.two_stage.resize(queries.size());
  if (key_only_baseline) out.key_only.resize(queries.size());

  if (threads != 1) {
    parallel_for(queries.size(), threads, [&](std::size_t i) {
      out.two_stage[i] = localize(queries[i], map, k);
      if (key_only_baseline) out.key_only[i] = localize_keys_only(queries[i], map, k);
    });
    return out;
  }

  std::vector<double> stage1, stage2;
  stage1.reserve(queries.size());
  stage2.reserve(queries.size());
  const ContextParams ctx = map.params().context();
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const auto t0 = Clock::now();
    const Key key = make_key(queries[i], ctx);
    const auto candidates = stage1_candidates(key, map, k);
    const auto t1 = Clock::now();
    out.two_stage[i] = stage2_rerank(queries[i], map, candidates);
    const auto t2 = Clock::now();
    stage1.push_back(std::chrono::duration<double>(t1 - t0).count());
    stage2.push_back(std::chrono::duration<double>(t2 - t1).count());
    if (key_only_baseline) out.key_only[i] = localize_keys_only(queries[i], map, k);
  }
  out.timing.stage1_s = median(std::move(stage1));
  out.timing.stage2_s = median(std::move(stage2));
  return out;
}

}  // namespace osmloc
