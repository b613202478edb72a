#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "favard/dimension.hpp"
#include "favard/errors.hpp"
#include "oracles.hpp"

using namespace favard;

namespace {

const IFS2D& four_corner() {
  static const IFS2D k = preset("four-corner");
  return k;
}

}  // namespace

TEST(MatchedDepth, SmallestPowerBelowScale) {
  EXPECT_EQ(matched_depth(four_corner(), Rational(1)), 0);
  EXPECT_EQ(matched_depth(four_corner(), Rational(1, 4)), 1);
  EXPECT_EQ(matched_depth(four_corner(), Rational(1, 5)), 2);
  EXPECT_EQ(matched_depth(four_corner(), Rational(1, 32)), 3);
  EXPECT_EQ(matched_depth(preset("sparse-corner(8)"), Rational(1, 512)), 3);
  EXPECT_THROW(matched_depth(four_corner(), Rational(0)), PreconditionError);
}

TEST(Cover, QuarterRadiusJoinsTheTwoColumns) {
  const std::vector<double> p{0.5};
  const auto st = cover_stats(four_corner(), Direction(), Rational(1, 4), p);
  EXPECT_TRUE(st.exact);
  EXPECT_EQ(st.depth, 1);
  ASSERT_EQ(st.count, 1u);
  ASSERT_TRUE(st.exact_intervals);
  EXPECT_EQ((*st.exact_intervals)[0], (Interval<Rational>{Rational(-1, 4), Rational(5, 4)}));
  EXPECT_DOUBLE_EQ(expanded_projection_length(four_corner(), Direction(), 1, 0.25), 1.5);
}

TEST(Cover, HalfQuarterPowersAtZero) {
  const std::vector<double> p{0.5};
  for (int n = 2; n <= 6; ++n) {
    const Rational r = Rational(1, 4).pow(n) / Rational(2);
    const auto st = cover_stats(four_corner(), Direction(), r, p);
    ASSERT_TRUE(st.exact);
    EXPECT_EQ(st.count, std::size_t{1} << n);
    EXPECT_EQ(*st.exact_min_length, Rational(2) * Rational(1, 4).pow(n));
    EXPECT_TRUE(st.floor_holds);
    EXPECT_TRUE(st.ceiling_holds);
    EXPECT_NEAR(st.holder[0].sum, std::sqrt(2.0), 1e-12);
    EXPECT_TRUE(st.holder[0].consistent);
    EXPECT_DOUBLE_EQ(st.holder[0].q, 1.0);
  }
}

TEST(Cover, RationalScaleIsExactOtherwiseFloat) {
  const std::vector<double> p{0.25, 0.5, 0.75};
  // 1 + (3/4)^2 = (5/4)^2
  const auto exact = cover_stats(four_corner(), Direction::x_chart(Rational(3, 4)), Rational(1, 64), p);
  EXPECT_TRUE(exact.exact);
  const auto approx = cover_stats(four_corner(), Direction::x_chart(Rational(1, 3)), Rational(1, 64), p);
  EXPECT_FALSE(approx.exact);
  EXPECT_FALSE(approx.exact_measure);
  for (const auto* st : {&exact, &approx}) {
    EXPECT_TRUE(st->floor_holds);
    EXPECT_TRUE(st->ceiling_holds);
    ASSERT_EQ(st->holder.size(), 3u);
    for (const auto& h : st->holder) {
      EXPECT_TRUE(h.consistent) << h.p;
      EXPECT_LE(h.sum, h.bound * (1 + 1e-12));
    }
    EXPECT_NEAR(st->intervals.measure(), st->measure, 1e-12);
  }
  EXPECT_THROW(cover_stats(four_corner(), Direction(), Rational(1, 4), std::vector<double>{1.0}), PreconditionError);
}

TEST(ExponentFit, RecoversSyntheticPowerLaw) {
  std::vector<double> r, t;
  for (int k = 3; k <= 8; ++k) {
    r.push_back(std::pow(8.0, -k));
    t.push_back(2.5 * std::pow(r.back(), 1.0 / 3.0));
  }
  const auto fit = exponent_fit(r, t);
  EXPECT_NEAR(fit.s, 1.0 / 3.0, 1e-9);
  EXPECT_NEAR(fit.C, 2.5, 1e-8);
  EXPECT_LT(fit.residual, 1e-6);
  EXPECT_NEAR(fit.dimension_bound, 2.0 / 3.0, 1e-9);
  EXPECT_EQ(fit.points, 6u);
}

TEST(ExponentFit, ConstantAndDegenerate) {
  const std::vector<double> r{0.1, 0.01, 0.001}, flat{4, 4, 4};
  const auto fit = exponent_fit(r, flat);
  EXPECT_NEAR(fit.s, 0.0, 1e-12);
  EXPECT_NEAR(fit.dimension_bound, 1.0, 1e-12);
  const std::vector<double> same{0.1, 0.1, 0.1};
  EXPECT_THROW(exponent_fit(same, flat), PreconditionError);
  EXPECT_THROW(exponent_fit(std::vector<double>{0.1, 0.01}, std::vector<double>{1, 2}), PreconditionError);
  EXPECT_THROW(exponent_fit(r, std::vector<double>{1, 0, 1}), PreconditionError);
}

TEST(NeighborhoodSequence, QuarterLattice) {
  const auto seq = neighborhood_sequence(quarter_lattice(), Rational(4), 5);
  const std::vector<Rational> expect{102, Rational(201, 2), Rational(401, 8), Rational(401, 32), Rational(401, 128),
                                     Rational(401, 512)};
  EXPECT_EQ(seq, expect);
  // brute-force union agrees
  const auto pts = quarter_lattice();
  Rational r(1);
  for (std::size_t n = 0; n < expect.size(); ++n, r /= Rational(4)) {
    std::vector<Interval<Rational>> grown;
    for (const auto& p : pts) grown.push_back({p.lo - r, p.hi + r});
    EXPECT_EQ(oracle::union_measure(grown), expect[n]);
  }
  EXPECT_THROW(neighborhood_sequence(pts, Rational(1), 3), PreconditionError);
}

TEST(NeighborhoodSequence, NonincreasingForAnySet) {
  std::mt19937_64 rng(29);
  for (int c = 0; c < 200; ++c) {
    const auto raw = oracle::random_rational_intervals(rng, 10);
    const auto seq = neighborhood_sequence(raw, Rational(3), 5);
    for (std::size_t n = 1; n < seq.size(); ++n) ASSERT_LE(seq[n], seq[n - 1]);
    if (!raw.empty()) ASSERT_GE(seq.back(), normalize(raw).measure());
  }
}

TEST(Seesaw, TwoStageLattice) {
  const std::vector<LatticeStage> stages{{0, Rational(1, 4), 4}, {0, Rational(1, 64), 2}};
  const auto res = seesaw_builder(stages, Rational(4), 6);
  const std::vector<Rational> expect{10, Rational(17, 2), Rational(49, 8), Rational(145, 32), Rational(273, 128),
                                     Rational(273, 512), Rational(273, 2048)};
  EXPECT_EQ(res.sequence, expect);
  ASSERT_TRUE(res.convexity);
  const std::vector<Rational> margins{Rational(-7, 8), Rational(25, 32), Rational(-103, 128), Rational(409, 512),
                                      Rational(2457, 2048)};
  EXPECT_EQ(res.convexity->margins, margins);
  EXPECT_EQ(res.sign_changes, 3);
  EXPECT_EQ(res.warnings.size(), 1u);
  EXPECT_FALSE(res.convexity->convex);
}

TEST(Seesaw, DisjointStagesDoNotWarn) {
  const std::vector<LatticeStage> stages{{0, Rational(1, 2), 1}, {10, Rational(1, 8), 1}};
  const auto res = seesaw_builder(stages, Rational(2), 1);
  EXPECT_TRUE(res.warnings.empty());
  EXPECT_FALSE(res.convexity);
  EXPECT_EQ(res.points.size(), 5u + 17u);
}

TEST(LatticePoints, Errors) {
  EXPECT_THROW(lattice_points(0, Rational(0), 1), PreconditionError);
  EXPECT_THROW(lattice_points(0, Rational(1), -1), PreconditionError);
  EXPECT_EQ(lattice_points(Rational(1, 2), Rational(1, 3), Rational(1, 2)).size(), 3u);
}

TEST(ReadPointSet, CommentsAndErrors) {
  std::istringstream in("0\n# header\n1/4\n\n0.5  # trailing\n");
  const auto pts = read_point_set(in);
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_EQ(pts[2].lo, Rational(1, 2));
  std::istringstream bad("0\nhalf\n");
  EXPECT_THROW(read_point_set(bad), MalformedInput);
}

TEST(DecaySeries, SparseCornerShrinks) {
  const auto ifs = preset("sparse-corner(8)");
  const std::vector<Rational> scales{Rational(1, 64), Rational(1, 512), Rational(1, 4096)};
  DecayConfig cfg;
  cfg.panels = 8;
  cfg.sensitivity = true;
  const auto series = decay_series(ifs, AngularWindow{}, scales, cfg);
  ASSERT_EQ(series.size(), 3u);
  for (std::size_t i = 0; i < series.size(); ++i) {
    EXPECT_EQ(series[i].depth, static_cast<int>(i) + 2);
    ASSERT_TRUE(series[i].total_coarser && series[i].total_finer);
    EXPECT_LE(*series[i].total_finer, series[i].total + 1e-12);
    EXPECT_GE(*series[i].total_coarser, series[i].total - 1e-12);
    if (i > 0) EXPECT_LT(series[i].total, series[i - 1].total);
  }
  const std::vector<Rational> unsorted{Rational(1, 8), Rational(1, 4)};
  EXPECT_THROW(decay_series(ifs, AngularWindow{}, unsorted, cfg), PreconditionError);
  EXPECT_THROW(decay_series(ifs, AngularWindow{1.0, 1.0}, scales, cfg), PreconditionError);
}
