#include "osmloc/descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "osmloc/error.hpp"

namespace osmloc {

std::size_t Descriptor::nonzero_count() const {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](double v) { return v != 0.0; }));
}

Descriptor rotate(const Descriptor& d, int shift) {
  shift %= kAngularBins;
  if (shift < 0) shift += kAngularBins;
  Descriptor out;
  for (int i = 0; i < kAngularBins; ++i) out[i] = d[(i + shift) % kAngularBins];
  return out;
}

ContextParams::ContextParams(double range, double bin_length)
    : range_(range), bin_length_(bin_length), rows_(0) {
  if (!(range > 0.0) || !(bin_length > 0.0) || !std::isfinite(range) || !std::isfinite(bin_length)) {
    throw ConfigError("range and bin length must be positive");
  }
  const double ratio = range / bin_length;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * ratio) {
    throw ConfigError("R must be an integer multiple of l_b (R=" + std::to_string(range) +
                      ", l_b=" + std::to_string(bin_length) + ")");
  }
  rows_ = static_cast<int>(rounded);
}

namespace {

// 1-based row for a nonzero value, or 0 for an empty column.
int row_of(double value, const ContextParams& params) {
  if (value <= 0.0) return 0;
  const int row = static_cast<int>(std::ceil(value / params.bin_length()));
  // Values up to R land in the last row; guard against rounding just above it.
  return std::clamp(row, 1, params.rows());
}

}  // namespace

Context::Context(const ContextParams& params)
    : params_(params), cells_(static_cast<std::size_t>(params.rows()) * kAngularBins, 0) {}

Context to_context(const Descriptor& desc, const ContextParams& params) {
  Context ctx(params);
  for (int i = 0; i < kAngularBins; ++i) {
    if (const int row = row_of(desc[i], params); row > 0) ctx.set(row, i);
  }
  return ctx;
}

Key to_key(const Context& ctx) {
  Key key;
  key.counts.assign(ctx.rows(), 0);
  for (int row = 1; row <= ctx.rows(); ++row) {
    for (int col = 0; col < kAngularBins; ++col) key.counts[row - 1] += ctx.at(row, col) ? 1 : 0;
  }
  return key;
}

Key make_key(const Descriptor& desc, const ContextParams& params) {
  Key key;
  key.counts.assign(params.rows(), 0);
  for (int i = 0; i < kAngularBins; ++i) {
    if (const int row = row_of(desc[i], params); row > 0) ++key.counts[row - 1];
  }
  return key;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InputError("l1_distance: length mismatch (" + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

std::int64_t l1_distance(const Key& a, const Key& b) {
  if (a.counts.size() != b.counts.size()) {
    throw InputError("l1_distance: key length mismatch (" + std::to_string(a.counts.size()) +
                     " vs " + std::to_string(b.counts.size()) + ")");
  }
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < a.counts.size(); ++i) {
    sum += std::abs(static_cast<std::int64_t>(a.counts[i]) - b.counts[i]);
  }
  return sum;
}

RotatedQuery::RotatedQuery(const Descriptor& query) {
  for (int i = 0; i < 2 * kAngularBins; ++i) doubled_[i] = query[i % kAngularBins];
}

RotatedMatch RotatedQuery::match(const Descriptor& candidate) const {
  // Partial sums are checked every block; since every term is non-negative a
  // prefix already above the best cannot win (nor tie) and the shift is skipped.
  constexpr int kBlock = 40;
  static_assert(kAngularBins % kBlock == 0);

  const double* cand = candidate.values().data();
  RotatedMatch best{std::numeric_limits<double>::infinity(), 0};
  for (int s = 0; s < kAngularBins; ++s) {
    const double* q = doubled_.data() + s;
    double sum = 0.0;
    bool abandoned = false;
    for (int base = 0; base < kAngularBins; base += kBlock) {
      for (int i = base; i < base + kBlock; ++i) sum += std::abs(q[i] - cand[i]);
      if (sum > best.distance) {
        abandoned = true;
        break;
      }
    }
    if (!abandoned && sum < best.distance) best = {sum, s};
  }
  return best;
}

RotatedMatch min_rotated_distance(const Descriptor& query, const Descriptor& candidate) {
  return RotatedQuery(query).match(candidate);
}

}  // namespace osmloc
