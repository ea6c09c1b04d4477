#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace osmloc {

inline constexpr int kAngularBins = 360;

/// One shortest distance (meters) per integer degree; bin i (0-based) is the
/// direction i degrees counter-clockwise from the frame's +x axis. Zero means
/// "nothing within range".
class Descriptor {
 public:
  using Values = std::array<double, kAngularBins>;

  Descriptor() { values_.fill(0.0); }
  explicit Descriptor(const Values& values) : values_(values) {}

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double, kAngularBins> values() const { return values_; }
  std::span<double, kAngularBins> values() { return values_; }

  std::size_t nonzero_count() const;

  friend bool operator==(const Descriptor&, const Descriptor&) = default;

 private:
  Values values_;
};

/// Circular shift: rotate(d, s)[i] = d[(i + s) mod 360].
Descriptor rotate(const Descriptor& d, int shift);

/// Range R and radial bin length l_b. R / l_b must be a positive integer.
class ContextParams {
 public:
  /// Throws ConfigError unless both are positive and R is an integer multiple of l_b.
  ContextParams(double range, double bin_length);

  double range() const { return range_; }
  double bin_length() const { return bin_length_; }
  int rows() const { return rows_; }

  friend bool operator==(const ContextParams&, const ContextParams&) = default;

 private:
  double range_;
  double bin_length_;
  int rows_;
};

/// rows x 360 occupancy grid; row k (1-based) of column i is set when
/// ceil(d[i] / l_b) == k. Columns with d[i] == 0 stay empty.
class Context {
 public:
  explicit Context(const ContextParams& params);

  const ContextParams& params() const { return params_; }
  int rows() const { return params_.rows(); }

  /// `row` is 1-based, `column` 0-based.
  bool at(int row, int column) const {
    return cells_[static_cast<std::size_t>(row - 1) * kAngularBins + column] != 0;
  }
  void set(int row, int column) {
    cells_[static_cast<std::size_t>(row - 1) * kAngularBins + column] = 1;
  }

 private:
  ContextParams params_;
  std::vector<std::uint8_t> cells_;
};

/// Row sums of a Context. Invariant to circular rotation of the descriptor.
struct Key {
  std::vector<std::int32_t> counts;

  friend bool operator==(const Key&, const Key&) = default;
};

Context to_context(const Descriptor& desc, const ContextParams& params);
Key to_key(const Context& ctx);

/// Same result as to_key(to_context(desc, params)) without materializing the grid.
Key make_key(const Descriptor& desc, const ContextParams& params);

/// Sum of absolute elementwise differences. Throws InputError on length mismatch.
double l1_distance(std::span<const double> a, std::span<const double> b);
std::int64_t l1_distance(const Key& a, const Key& b);

struct RotatedMatch {
  double distance = 0.0;
  int shift = 0;
};

/// Minimum over s in [0, 360) of L1(rotate(query, s), candidate); ties resolve
/// to the smallest shift.
RotatedMatch min_rotated_distance(const Descriptor& query, const Descriptor& candidate);

/// Query prepared for repeated rotated matching (the doubled buffer is built once).
class RotatedQuery {
 public:
  explicit RotatedQuery(const Descriptor& query);

  RotatedMatch match(const Descriptor& candidate) const;

 private:
  std::array<double, 2 * kAngularBins> doubled_;
};

}  // namespace osmloc
