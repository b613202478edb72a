#include <cmath>

#include <gtest/gtest.h>

#include "favard/errors.hpp"
#include "favard/ifs.hpp"
#include "oracles.hpp"

using namespace favard;

TEST(Presets, FourCorner) {
  const auto k = preset("four-corner");
  ASSERT_EQ(k.size(), 4u);
  EXPECT_EQ(k.ratio_sum(), Rational(1));
  EXPECT_TRUE(k.convexity_applies());
  EXPECT_EQ(k.symmetry(), Symmetry::Square);
  EXPECT_EQ(k.base(), (Rect{0, 0, 1, 1}));
  EXPECT_EQ(k.maps()[3].translation, (Point{Rational(3, 4), Rational(3, 4)}));
  EXPECT_DOUBLE_EQ(k.similarity_dimension(), 1.0);
}

TEST(Presets, SparseCornerSpellings) {
  const auto a = preset("sparse-corner(8)");
  EXPECT_EQ(preset("sparse-corner:8"), a);
  EXPECT_EQ(preset("sparse-corner-8"), a);
  EXPECT_EQ(a.ratio_sum(), Rational(1, 2));
  EXPECT_FALSE(a.convexity_applies());
  EXPECT_NEAR(a.similarity_dimension(), 2.0 / 3.0, 1e-12);
  EXPECT_EQ(a.maps()[3].translation, (Point{Rational(7, 8), Rational(7, 8)}));
  EXPECT_THROW(preset("sparse-corner(4)"), MalformedInput);
  EXPECT_THROW(preset("sparse-corner(2.5)"), MalformedInput);
  EXPECT_THROW(preset("sparse-corner"), MalformedInput);
}

TEST(Presets, GasketAndUnknown) {
  const auto g = preset("sierpinski-gasket");
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.ratio_sum(), Rational(3, 2));
  EXPECT_NEAR(g.similarity_dimension(), std::log(3.0) / std::log(2.0), 1e-12);
  EXPECT_THROW(preset("koch"), MalformedInput);
}

TEST(Similitude, RatioRange) {
  EXPECT_THROW(Similitude2D(Rational(1), {0, 0}), MalformedInput);
  EXPECT_THROW(Similitude2D(Rational(0), {0, 0}), MalformedInput);
  EXPECT_THROW(Similitude2D(Rational(-1, 2), {0, 0}), MalformedInput);
  EXPECT_THROW(IFS2D("one", Rect{0, 0, 1, 1}, {Similitude2D(Rational(1, 2), {0, 0})}), MalformedInput);
}

TEST(SimilarityDimension, NonUniformRatios) {
  // 1/2 and 1/4: (1/2)^s + (1/4)^s = 1 at s = log2(golden ratio)
  const IFS2D f("mixed", Rect{0, 0, 1, 1},
                {Similitude2D(Rational(1, 2), {0, 0}), Similitude2D(Rational(1, 4), {Rational(3, 4), 0})});
  EXPECT_NEAR(f.similarity_dimension(), std::log2((1 + std::sqrt(5.0)) / 2), 1e-10);
}

TEST(Validate, FourCornerReport) {
  const auto rep = validate(preset("four-corner"));
  EXPECT_EQ(rep.ratio_sum, Rational(1));
  EXPECT_TRUE(rep.convexity_applies);
  EXPECT_TRUE(rep.nesting_pass);
  EXPECT_EQ(rep.nesting.size(), 8u);
  ASSERT_EQ(rep.cylinder_counts.size(), 9u);
  EXPECT_EQ(rep.cylinder_counts[8], mpz_class(65536));
}

TEST(Validate, NestingFailure) {
  const IFS2D bad("bad", Rect{0, 0, 1, 1},
                  {Similitude2D(Rational(1, 2), {0, 0}), Similitude2D(Rational(1, 2), {Rational(3, 4), 0})});
  const auto rep = validate(bad);
  EXPECT_FALSE(rep.nesting_pass);
  EXPECT_EQ(rep.ratio_sum, Rational(1));
  EXPECT_TRUE(rep.convexity_applies);
}

TEST(Cylinders, FourCornerGenerationsAreSquaresOfSideFourToMinusN) {
  const auto k = preset("four-corner");
  for (int n = 0; n <= 4; ++n) {
    const auto cyl = oracle::cylinders(k, n);
    ASSERT_EQ(cyl.size(), std::size_t{1} << (2 * n));
    for (const auto& r : cyl) {
      ASSERT_EQ(r.width(), Rational(1, 4).pow(n));
      ASSERT_EQ(r.height(), Rational(1, 4).pow(n));
      ASSERT_TRUE(k.base().contains(r));
    }
  }
}

TEST(Config, RoundTripAllPresets) {
  for (const char* name : {"four-corner", "sparse-corner(8)", "sierpinski-gasket"}) {
    const auto ifs = preset(name);
    EXPECT_EQ(parse_config(dump_config(ifs)), ifs) << name;
  }
}

TEST(Config, BareValuesAndComments) {
  const auto ifs = parse_config(R"(
    # two halves
    name = halves
    base = [0, 0, 1, 1]
    map { ratio = 1/2, translate = [0, 0] }
    map { ratio = 0.5, translate = [1/2, 0], rotation = 0 }  # trailing
  )");
  EXPECT_EQ(ifs.name(), "halves");
  EXPECT_EQ(ifs.size(), 2u);
  EXPECT_EQ(ifs.symmetry(), Symmetry::None);
  EXPECT_EQ(ifs.maps()[1].ratio, Rational(1, 2));
}

TEST(Config, Errors) {
  const char* bad[] = {
      "",                                                                          // no base
      "base = [0, 0, 1]",                                                          // short list
      "base = [0,0,1,1]\nmap { ratio = 1/2 }\nmap { ratio = 1/2, translate = [0,0] }",  // missing translate
      "base = [0,0,1,1]\nmap { ratio = 2, translate = [0,0] }\nmap { ratio = 1/2, translate = [0,0] }",
      "base = [0,0,1,1]\nmap { ratio = 1/2, translate = [0,0], rotation = 1/4 }\nmap { ratio = 1/2, translate = [0,0] }",
      "base = [0,0,1,1]\nsymmetry = round",
      "base = [0,0,1,1]\ncolour = red",
      "name = \"open",
  };
  for (const char* text : bad) EXPECT_THROW(parse_config(text), MalformedInput) << text;
  EXPECT_THROW(load_config("/nonexistent/ifs.conf"), MalformedInput);
}
