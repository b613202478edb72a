#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "favard/rational.hpp"

namespace favard {

struct Point {
  Rational x;
  Rational y;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Rect {
  Rational x0, y0, x1, y1;

  Rational width() const { return x1 - x0; }
  Rational height() const { return y1 - y0; }
  bool contains(const Rect& o) const { return x0 <= o.x0 && o.x1 <= x1 && y0 <= o.y0 && o.y1 <= y1; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Planar homothety z -> ratio * z + translation, with 0 < ratio < 1.
struct Similitude2D {
  Rational ratio;
  Point translation;

  Similitude2D(Rational r, Point t);

  Point apply(const Point& p) const { return {ratio * p.x + translation.x, ratio * p.y + translation.y}; }
  Rect apply(const Rect& r) const {
    return {ratio * r.x0 + translation.x, ratio * r.y0 + translation.y, ratio * r.x1 + translation.x,
            ratio * r.y1 + translation.y};
  }
  friend bool operator==(const Similitude2D&, const Similitude2D&) = default;
};

/// Symmetry the attractor is known to have. `Square` means invariance under
/// the dihedral group of the base square, so |proj_theta A_n| has period
/// pi/2 and is symmetric about pi/4.
enum class Symmetry { None, Square };

/// Planar IFS {f_i} acting on a rectangular generation-0 set.
/// Generations follow A_{n+1} = U_i f_i(A_n).
class IFS2D {
 public:
  IFS2D(std::string name, Rect base, std::vector<Similitude2D> maps, Symmetry symmetry = Symmetry::None);

  const std::string& name() const { return name_; }
  const Rect& base() const { return base_; }
  const std::vector<Similitude2D>& maps() const { return maps_; }
  std::size_t size() const { return maps_.size(); }
  Symmetry symmetry() const { return symmetry_; }

  const Rational& ratio_sum() const { return ratio_sum_; }
  /// True iff the ratios sum to exactly one (needed for alpha_n to be convex in n).
  bool convexity_applies() const { return ratio_sum_ == Rational(1); }
  const Rational& max_ratio() const { return max_ratio_; }

  /// Solution s of sum_i r_i^s = 1.
  double similarity_dimension() const;

  friend bool operator==(const IFS2D&, const IFS2D&) = default;

 private:
  std::string name_;
  Rect base_;
  std::vector<Similitude2D> maps_;
  Symmetry symmetry_;
  Rational ratio_sum_;
  Rational max_ratio_;
};

/// Four ratio-1/k homotheties at the corners of the unit square (k > 4).
IFS2D sparse_corner(long k);

/// Named presets: "four-corner", "sparse-corner(k)" (also "sparse-corner:k"),
/// "sierpinski-gasket". Throws MalformedInput for anything else.
IFS2D preset(std::string_view name);
std::vector<std::string> preset_names();

struct NestingCheck {
  std::string direction;  // "X:t" or "Y:u"
  double angle = 0.0;
  bool pass = false;
};

struct ValidationReport {
  Rational ratio_sum;
  bool convexity_applies = false;
  bool nesting_pass = false;
  std::vector<NestingCheck> nesting;
  std::size_t map_count = 0;
  std::vector<mpz_class> cylinder_counts;  // N^n for n = 0..display_depth
};

/// Reports ratio sum, nesting of f_i(base) inside base along 8 sampled
/// directions, and cylinder counts. Never throws on a bad system.
ValidationReport validate(const IFS2D& ifs, int display_depth = 8);

/// Config text (see README for the grammar).
IFS2D parse_config(std::string_view text);
std::string dump_config(const IFS2D& ifs);
IFS2D load_config(const std::filesystem::path& path);

}  // namespace favard
