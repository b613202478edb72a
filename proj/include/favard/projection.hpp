#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "favard/ifs.hpp"
#include "favard/interval_set.hpp"
#include "favard/rational.hpp"

namespace favard {

inline constexpr std::size_t kDefaultIntervalCap = 50'000'000;
inline constexpr std::int64_t kDefaultSnapDenominator = 1'000'000;

enum class Chart { X, Y };
enum class Backend { Exact, Float };

/// A projection direction given by a chart and an exact slope.
///
/// Chart X with slope t (|t| <= 1) is the sheared functional x + t*y and
/// covers theta in [-pi/4, pi/4]; chart Y with slope u is y + u*x and covers
/// [pi/4, 3pi/4]. The true projection is scale() times the sheared one.
class Direction {
 public:
  /// Horizontal projection (chart X, slope 0).
  Direction() : chart_(Chart::X) {}
  Direction(Chart chart, Rational slope);

  /// Chart X at slope t.
  static Direction x_chart(const Rational& t) { return Direction(Chart::X, t); }
  static Direction y_chart(const Rational& u) { return Direction(Chart::Y, u); }

  /// Direction nearest to theta (any real, reduced mod pi) with its slope
  /// snapped to a rational of denominator <= max_den.
  static Direction from_angle(double theta, std::int64_t max_den = kDefaultSnapDenominator);

  Chart chart() const { return chart_; }
  const Rational& slope() const { return slope_; }
  /// Angle in [-pi/4, 3pi/4].
  double angle() const;
  /// 1/sqrt(1 + slope^2), in [1/sqrt 2, 1].
  double scale() const;
  Rational scale_squared() const { return Rational(1) / (Rational(1) + slope_ * slope_); }

  /// Sheared coordinate of a point.
  Rational functional(const Point& p) const {
    return chart_ == Chart::X ? p.x + slope_ * p.y : p.y + slope_ * p.x;
  }

  /// "X:1/2" style label.
  std::string label() const;

  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  Chart chart_;
  Rational slope_;
};

/// Sheared projection of a rectangle: the interval between the extreme
/// values of the chart functional over its corners.
Interval<Rational> project_rect(const Rect& r, const Direction& d);

struct Map1D {
  Rational ratio;
  Rational offset;
};

/// The 1D system T_i : x -> r_i x + p(beta_i) induced by a direction.
struct ProjectedIFS1D {
  std::vector<Map1D> maps;
  Interval<Rational> base_interval;
};

ProjectedIFS1D project_ifs(const IFS2D& ifs, const Direction& d);

struct GenerationSet {
  int n = 0;
  Direction direction;
  RationalIntervalSet set;  // sheared coordinates
};

/// Iterates E_0, E_1, ... by pushing the merged set through every T_i.
///
/// Endpoints are kept as int64 numerators over the common denominator
/// D0 * B^n while they fit; on overflow the generator switches to GMP
/// rationals transparently.
class ExactGenerator {
 public:
  explicit ExactGenerator(const ProjectedIFS1D& p, std::size_t cap = kDefaultIntervalCap,
                          bool allow_fast_path = true);

  int depth() const { return depth_; }
  void advance();
  void advance_to(int n);

  Rational measure() const;
  std::size_t count() const;
  RationalIntervalSet set() const;
  bool using_fast_path() const { return fast_; }

 private:
  bool try_advance_scaled();
  void advance_rational();
  void check_cap(std::size_t count) const;

  ProjectedIFS1D p_;
  std::size_t cap_;
  int depth_ = 0;
  bool fast_ = false;

  // scaled representation: value = numerator / denom_
  ScaledIntervalSet scaled_;
  mpz_class denom_;
  mpz_class ratio_lcm_;
  std::vector<std::int64_t> scaled_ratio_;

  RationalIntervalSet exact_;
};

/// Generation n of the projected system, exact.
GenerationSet generation(const ProjectedIFS1D& p, const Direction& d, int n,
                         std::size_t cap = kDefaultIntervalCap);
GenerationSet generation(const IFS2D& ifs, const Direction& d, int n, std::size_t cap = kDefaultIntervalCap);

/// Float-backend generation (sheared coordinates, merge epsilon 1e-12).
FloatIntervalSet generation_float(const ProjectedIFS1D& p, int n, std::size_t cap = kDefaultIntervalCap);

struct ExactAlpha {
  Rational sheared;  // measure in sheared coordinates
  double scale = 1.0;

  double true_length() const { return sheared.to_double() * scale; }
};

ExactAlpha alpha_exact(const IFS2D& ifs, const Direction& d, int n, std::size_t cap = kDefaultIntervalCap);

/// True projected length alpha_n(theta) = |proj_theta A_n|.
double alpha(const IFS2D& ifs, const Direction& d, int n, Backend backend = Backend::Exact,
             std::size_t cap = kDefaultIntervalCap);

}  // namespace favard
