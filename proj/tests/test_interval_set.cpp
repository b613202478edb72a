#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "favard/dimension.hpp"
#include "favard/errors.hpp"
#include "favard/interval_set.hpp"
#include "oracles.hpp"

using namespace favard;

namespace {

using RI = Interval<Rational>;

RI iv(Rational lo, Rational hi) { return {std::move(lo), std::move(hi)}; }

}  // namespace

TEST(Normalize, EmptyInput) {
  const auto s = normalize<Rational>({});
  EXPECT_TRUE(s.empty());
  EXPECT_EQ(s.measure(), Rational(0));
}

TEST(Normalize, FourTouchingImagesTileOneInterval) {
  const auto s = normalize<Rational>({iv(0, Rational(3, 8)), iv(Rational(3, 4), Rational(9, 8)),
                                      iv(Rational(3, 8), Rational(3, 4)), iv(Rational(9, 8), Rational(3, 2))});
  ASSERT_EQ(s.count(), 1u);
  EXPECT_EQ(s[0], iv(0, Rational(3, 2)));
  EXPECT_EQ(s.measure(), Rational(3, 2));
}

TEST(Normalize, OverlappingPair) {
  const auto s = normalize<Rational>({iv(0, 1), iv(Rational(1, 2), 2)});
  ASSERT_EQ(s.count(), 1u);
  EXPECT_EQ(s[0], iv(0, 2));
  EXPECT_EQ(s.measure(), Rational(2));
}

TEST(Normalize, RejectsReversedInterval) {
  EXPECT_THROW(normalize<Rational>({iv(1, 0)}), MalformedInput);
  EXPECT_THROW(normalize<double>({{1.0, 0.5}}), MalformedInput);
}

TEST(Normalize, DropsDegenerateUnlessAbsorbed) {
  const auto s = normalize<Rational>({iv(5, 5), iv(0, 1), iv(1, 1)});
  ASSERT_EQ(s.count(), 1u);
  EXPECT_EQ(s[0], iv(0, 1));
}

TEST(Normalize, FloatBackendMergesSubEpsilonGaps) {
  const auto s = normalize<double>({{0.0, 1.0}, {1.0 + 5e-13, 2.0}, {2.0 + 1e-9, 3.0}});
  ASSERT_EQ(s.count(), 2u);
  EXPECT_EQ(s[0].hi, 2.0);
  EXPECT_EQ(s[1].lo, 2.0 + 1e-9);
}

TEST(Measure, Examples) {
  EXPECT_EQ(RationalIntervalSet{}.measure(), Rational(0));
  const auto x_proj = normalize<Rational>({iv(0, Rational(1, 4)), iv(Rational(3, 4), 1)});
  EXPECT_EQ(x_proj.measure(), Rational(1, 2));
}

TEST(Expand, DegeneratePoint) {
  const std::vector<RI> point{iv(0, 0)};
  const auto s = neighborhood<Rational>(point, Rational(1));
  ASSERT_EQ(s.count(), 1u);
  EXPECT_EQ(s[0], iv(-1, 1));
  EXPECT_EQ(s.measure(), Rational(2));
}

TEST(Expand, QuarterLatticeMergesIntoOneInterval) {
  const auto pts = quarter_lattice();
  ASSERT_EQ(pts.size(), 401u);
  const auto s = neighborhood<Rational>(pts, Rational(1, 4));
  ASSERT_EQ(s.count(), 1u);
  EXPECT_EQ(s[0], iv(Rational(-1, 4), Rational(401, 4)));
  EXPECT_EQ(s.measure(), Rational(201, 2));
}

TEST(Expand, TwoIntervals) {
  const auto s = normalize<Rational>({iv(0, Rational(1, 4)), iv(Rational(3, 4), 1)}).expand(Rational(1, 8));
  ASSERT_EQ(s.count(), 2u);
  EXPECT_EQ(s[0], iv(Rational(-1, 8), Rational(3, 8)));
  EXPECT_EQ(s[1], iv(Rational(5, 8), Rational(9, 8)));
  EXPECT_EQ(s.measure(), Rational(1));
}

TEST(Expand, RejectsNonPositiveRadius) {
  const auto s = normalize<Rational>({iv(0, 1)});
  EXPECT_THROW(s.expand(Rational(0)), PreconditionError);
  EXPECT_THROW(s.expand(Rational(-1, 2)), PreconditionError);
}

TEST(ScaledIntervalSet, MatchesRationalView) {
  ScaledIntervalSet s{IntervalSet<std::int64_t>::normalize({{0, 3}, {8, 12}}), Rational(1, 8)};
  EXPECT_EQ(s.measure(), Rational(7, 8));
  const auto r = s.to_rational();
  EXPECT_EQ(r.measure(), Rational(7, 8));
  EXPECT_EQ(r[1], iv(1, Rational(3, 2)));
}

TEST(FormatScalar, ShortestRoundTrip) {
  EXPECT_EQ(format_scalar(0.1), "0.1");
  EXPECT_EQ(format_scalar(Rational(-3, 8)), "-3/8");
  EXPECT_EQ(std::stod(format_scalar(1.0 / 3.0)), 1.0 / 3.0);
}

// ---------------------------------------------------------------------------
// Properties over 10^4 random interval lists.

class IntervalProperties : public ::testing::Test {
 protected:
  static constexpr int kCases = 10'000;
  std::mt19937_64 rng{20240611};
};

TEST_F(IntervalProperties, CanonicalFormAndOracleMeasure) {
  for (int c = 0; c < kCases; ++c) {
    const auto raw = oracle::random_rational_intervals(rng, 12);
    const auto s = normalize(raw);
    for (std::size_t i = 0; i < s.count(); ++i) {
      ASSERT_LT(s[i].lo, s[i].hi);
      if (i > 0) ASSERT_LT(s[i - 1].hi, s[i].lo);
    }
    ASSERT_EQ(s.measure(), oracle::union_measure(raw));
    // idempotent
    ASSERT_EQ(normalize(s.intervals()), s);
  }
}

TEST_F(IntervalProperties, PermutationInvariance) {
  for (int c = 0; c < kCases; ++c) {
    auto raw = oracle::random_rational_intervals(rng, 12);
    const auto s = normalize(raw);
    std::shuffle(raw.begin(), raw.end(), rng);
    ASSERT_EQ(normalize(raw), s);
  }
}

TEST_F(IntervalProperties, MonotoneUnderInclusion) {
  for (int c = 0; c < kCases; ++c) {
    auto raw = oracle::random_rational_intervals(rng, 12);
    const auto small = normalize(raw);
    const auto extra = oracle::random_rational_intervals(rng, 4);
    raw.insert(raw.end(), extra.begin(), extra.end());
    const auto big = normalize(raw);
    ASSERT_TRUE(big.contains(small));
    ASSERT_LE(small.measure(), big.measure());
  }
}

TEST_F(IntervalProperties, ExpansionBounds) {
  std::uniform_int_distribution<long> rnum(1, 12), rden(1, 16);
  for (int c = 0; c < kCases; ++c) {
    const auto s = normalize(oracle::random_rational_intervals(rng, 12));
    const Rational r(rnum(rng), rden(rng));
    const auto e = s.expand(r);
    ASSERT_GE(e.measure(), s.measure());
    ASSERT_LE(e.count(), s.count());
    const Rational ceiling = s.measure() + Rational(2) * r * Rational(static_cast<long>(s.count()));
    ASSERT_LE(e.measure(), ceiling);
    // equality exactly when no two grown intervals overlap (touching is fine)
    bool separated = true;
    for (std::size_t i = 1; i < s.count(); ++i) separated = separated && s[i].lo - s[i - 1].hi >= Rational(2) * r;
    ASSERT_EQ(e.measure() == ceiling, separated);
    if (e.count() == s.count()) ASSERT_EQ(e.measure(), ceiling);
    ASSERT_TRUE(e.contains(s));
  }
}

TEST_F(IntervalProperties, AffineEquivariance) {
  std::uniform_int_distribution<long> num(1, 30), den(1, 11), shift(-20, 20);
  for (int c = 0; c < kCases; ++c) {
    const auto raw = oracle::random_rational_intervals(rng, 12);
    const Rational a(num(rng), den(rng));
    const Rational b(shift(rng), den(rng));
    std::vector<Interval<Rational>> mapped;
    for (const auto& i : raw) mapped.push_back({a * i.lo + b, a * i.hi + b});
    const auto s = normalize(raw);
    ASSERT_EQ(normalize(mapped).measure(), a * s.measure());
    ASSERT_EQ(s.affine(a, b), normalize(mapped));
  }
}

TEST_F(IntervalProperties, FloatBackendTracksExact) {
  for (int c = 0; c < kCases / 10; ++c) {
    const auto raw = oracle::random_rational_intervals(rng, 12);
    std::vector<Interval<double>> fraw;
    for (const auto& i : raw) fraw.push_back({i.lo.to_double(), i.hi.to_double()});
    const auto exact = normalize(raw);
    const auto approx = normalize(fraw);
    ASSERT_EQ(approx.count(), exact.count());
    ASSERT_NEAR(approx.measure(), exact.measure().to_double(), 1e-12);
  }
}
