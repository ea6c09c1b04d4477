#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "osmloc/descriptor.hpp"
#include "osmloc/error.hpp"
#include "test_util.hpp"

namespace osmloc {
namespace {

const ContextParams kDefault{50.0, 5.0};

TEST(ContextParams, RequiresIntegerRatio) {
  EXPECT_EQ(kDefault.rows(), 10);
  EXPECT_EQ(ContextParams(50.0, 2.0).rows(), 25);
  EXPECT_EQ(ContextParams(50.0, 10.0).rows(), 5);
  EXPECT_THROW(ContextParams(50.0, 3.0), ConfigError);
  EXPECT_THROW(ContextParams(50.0, 0.0), ConfigError);
  EXPECT_THROW(ContextParams(-5.0, 5.0), ConfigError);
  EXPECT_THROW(ContextParams(4.0, 5.0), ConfigError);
}

TEST(Context, CeilRowAssignment) {
  Descriptor d;
  d[39] = 7.0;  // 40th degree
  const Context ctx = to_context(d, kDefault);
  for (int row = 1; row <= 10; ++row) {
    for (int col = 0; col < kAngularBins; ++col) {
      EXPECT_EQ(ctx.at(row, col), row == 2 && col == 39) << row << "," << col;
    }
  }
}

TEST(Context, BoundaryValueUsesLowerRow) {
  Descriptor d;
  d[0] = 5.0;
  d[1] = 50.0;
  d[2] = 5.0000001;
  const Context ctx = to_context(d, kDefault);
  EXPECT_TRUE(ctx.at(1, 0));
  EXPECT_TRUE(ctx.at(10, 1));
  EXPECT_TRUE(ctx.at(2, 2));
}

TEST(Context, ZeroDescriptorIsEmpty) {
  const Context ctx = to_context(Descriptor{}, kDefault);
  for (int row = 1; row <= 10; ++row)
    for (int col = 0; col < kAngularBins; ++col) EXPECT_FALSE(ctx.at(row, col));
  EXPECT_EQ(to_key(ctx).counts, std::vector<std::int32_t>(10, 0));
}

TEST(Key, AllSevensFillRowTwo) {
  Descriptor d;
  for (int i = 0; i < kAngularBins; ++i) d[i] = 7.0;
  const Key key = to_key(to_context(d, kDefault));
  EXPECT_EQ(key.counts, (std::vector<std::int32_t>{0, 360, 0, 0, 0, 0, 0, 0, 0, 0}));
}

TEST(Key, SingleColumn) {
  Descriptor d;
  d[100] = 12.5;  // ceil(2.5) = 3
  const Key key = to_key(to_context(d, kDefault));
  std::vector<std::int32_t> expected(10, 0);
  expected[2] = 1;
  EXPECT_EQ(key.counts, expected);
}

TEST(Key, ColumnSumsAndTotals) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Descriptor d = testing::random_descriptor(rng, 50.0, 0.5);
    const Context ctx = to_context(d, kDefault);
    for (int col = 0; col < kAngularBins; ++col) {
      int sum = 0;
      for (int row = 1; row <= 10; ++row) sum += ctx.at(row, col) ? 1 : 0;
      EXPECT_EQ(sum, d[col] > 0.0 ? 1 : 0);
    }
    const Key key = to_key(ctx);
    std::int64_t total = 0;
    for (auto c : key.counts) {
      EXPECT_LE(c, 360);
      total += c;
    }
    EXPECT_EQ(total, static_cast<std::int64_t>(d.nonzero_count()));
    EXPECT_EQ(make_key(d, kDefault), key);
  }
}

TEST(Key, RotationInvariant) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> shift(-720, 720);
  for (int trial = 0; trial < 200; ++trial) {
    const Descriptor d = testing::random_descriptor(rng, 50.0);
    const Key base = to_key(to_context(d, kDefault));
    for (int s = 0; s < 4; ++s) EXPECT_EQ(to_key(to_context(rotate(d, shift(rng)), kDefault)), base);
  }
}

TEST(Rotate, Convention) {
  Descriptor d;
  for (int i = 0; i < kAngularBins; ++i) d[i] = i;
  const Descriptor r = rotate(d, 10);
  EXPECT_EQ(r[0], 10.0);
  EXPECT_EQ(r[349], 359.0);
  EXPECT_EQ(r[350], 0.0);
  EXPECT_EQ(rotate(d, -350), r);
  EXPECT_EQ(rotate(rotate(d, 100), 260), d);
}

TEST(L1, Basics) {
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{0, 4, 3};
  EXPECT_EQ(l1_distance(a, a), 0.0);
  EXPECT_EQ(l1_distance(a, b), 3.0);
  const std::vector<double> c{1, 2};
  EXPECT_THROW(l1_distance(a, c), InputError);
  EXPECT_THROW(l1_distance(Key{{1, 2}}, Key{{1}}), InputError);
}

TEST(L1, MatchesElementwiseOracle) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const Descriptor a = testing::random_descriptor(rng, 50.0);
    const Descriptor b = testing::random_descriptor(rng, 50.0);
    long double oracle = 0.0L;
    for (int i = 0; i < kAngularBins; ++i) oracle += std::fabs(static_cast<long double>(a[i]) - b[i]);
    EXPECT_NEAR(l1_distance(a.values(), b.values()), static_cast<double>(oracle), 1e-9);
  }
}

TEST(L1, MetricLawsOnKeys) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const Key a = make_key(testing::random_descriptor(rng, 50.0), kDefault);
    const Key b = make_key(testing::random_descriptor(rng, 50.0, 0.3), kDefault);
    const Key c = make_key(testing::random_descriptor(rng, 50.0, 0.9), kDefault);
    EXPECT_GE(l1_distance(a, b), 0);
    EXPECT_EQ(l1_distance(a, a), 0);
    EXPECT_EQ(l1_distance(a, b) == 0, a == b);
    EXPECT_EQ(l1_distance(a, b), l1_distance(b, a));
    EXPECT_LE(l1_distance(a, c), l1_distance(a, b) + l1_distance(b, c));
  }
}

TEST(RotatedDistance, ExactCyclicMatch) {
  std::mt19937_64 rng(1);
  const Descriptor q = testing::random_descriptor(rng, 50.0);
  const auto m = min_rotated_distance(q, rotate(q, 90));
  EXPECT_EQ(m.distance, 0.0);
  EXPECT_EQ(m.shift, 90);
  const auto self = min_rotated_distance(q, q);
  EXPECT_EQ(self.distance, 0.0);
  EXPECT_EQ(self.shift, 0);
}

TEST(RotatedDistance, TieBreaksToSmallestShift) {
  Descriptor constant;
  for (int i = 0; i < kAngularBins; ++i) constant[i] = 3.0;
  const auto m = min_rotated_distance(constant, Descriptor{});
  EXPECT_EQ(m.distance, 3.0 * 360);
  EXPECT_EQ(m.shift, 0);

  // Period-90 pattern matches at shifts 30, 120, 210, 300.
  Descriptor periodic;
  for (int i = 0; i < kAngularBins; ++i) periodic[i] = (i % 90) + 1.0;
  const auto p = min_rotated_distance(periodic, rotate(periodic, 300));
  EXPECT_EQ(p.distance, 0.0);
  EXPECT_EQ(p.shift, 30);
}

TEST(RotatedDistance, MatchesBruteForceSweep) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const Descriptor q = testing::random_descriptor(rng, 50.0);
    const Descriptor c = testing::random_descriptor(rng, 50.0);
    const auto [dist, shift] = testing::brute_rotated(q, c);
    const auto m = min_rotated_distance(q, c);
    EXPECT_EQ(m.distance, dist);
    EXPECT_EQ(m.shift, shift);
  }
}

TEST(RotatedDistance, SymmetricAndBoundedByPlainL1) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const Descriptor a = testing::random_descriptor(rng, 50.0);
    const Descriptor b = testing::random_descriptor(rng, 50.0, 0.4);
    const auto ab = min_rotated_distance(a, b);
    const auto ba = min_rotated_distance(b, a);
    EXPECT_NEAR(ab.distance, ba.distance, 1e-9 * std::max(1.0, ab.distance));
    EXPECT_LE(ab.distance, l1_distance(a.values(), b.values()));
  }
}

}  // namespace
}  // namespace osmloc
