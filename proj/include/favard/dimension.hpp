#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "favard/analysis.hpp"
#include "favard/ifs.hpp"
#include "favard/interval_set.hpp"
#include "favard/kernels.hpp"
#include "favard/projection.hpp"
#include "favard/rational.hpp"

namespace favard {

/// Angular window A, as a sub-interval of one half-period of directions.
struct AngularWindow {
  double lo = 0.0;
  double hi = 3.14159265358979323846;
};

struct DecayConfig {
  int panels = 32;
  int order = 4;
  /// Also integrate at generation depth -1 / +1 to show sensitivity to the
  /// matched-depth rule.
  bool sensitivity = false;
  Execution exec = Execution::Parallel;
  std::int64_t snap_denominator = kDefaultSnapDenominator;
  std::size_t cap = kDefaultIntervalCap;
};

/// One scale of the neighborhood-decay series: integral over the window of
/// |proj_theta (A_depth (r))|.
struct DecayRecord {
  Rational r;
  int depth = 0;
  double total = 0.0;
  std::optional<double> total_coarser;  // depth - 1
  std::optional<double> total_finer;    // depth + 1
};

/// Smallest n with max_ratio^n <= r.
int matched_depth(const IFS2D& ifs, const Rational& r);

/// True length of the r-neighborhood of proj_theta A_depth (float backend).
double expanded_projection_length(const IFS2D& ifs, const Direction& d, int depth, double r,
                                  std::size_t cap = kDefaultIntervalCap);

/// Scales must be positive and strictly decreasing.
std::vector<DecayRecord> decay_series(const IFS2D& ifs, const AngularWindow& window, std::span<const Rational> scales,
                                      const DecayConfig& cfg = {});

struct HolderEntry {
  double p = 0.0;
  double q = 0.0;  // 1/p - 1/q = 1
  double sum = 0.0;    // sum_k |I_k|^p
  double bound = 0.0;  // measure^p * count^(1-p), the Hoelder ceiling
  bool consistent = false;
};

/// The cover {I_k} of proj_theta A_depth by the disjoint intervals of its
/// r-neighborhood, in true (unsheared) coordinates.
struct CoverStatistic {
  Rational r;
  Direction direction;
  int depth = 0;
  bool exact = false;  // scale(d) rational: every field below is exact
  FloatIntervalSet intervals;
  std::optional<RationalIntervalSet> exact_intervals;
  std::size_t count = 0;
  double measure = 0.0;
  double min_length = 0.0;
  std::optional<Rational> exact_measure;
  std::optional<Rational> exact_min_length;
  std::vector<HolderEntry> holder;
  bool floor_holds = false;    // min_length >= 2r
  bool ceiling_holds = false;  // count <= measure / (2r)
};

/// `depth` < 0 selects matched_depth(ifs, r).
CoverStatistic cover_stats(const IFS2D& ifs, const Direction& d, const Rational& r, std::span<const double> exponents,
                           int depth = -1, std::size_t cap = kDefaultIntervalCap);

struct ExponentFit {
  double s = 0.0;
  double C = 0.0;
  double residual = 0.0;  // max |log total - fitted line|
  double dimension_bound = 1.0;
  std::size_t points = 0;
};

/// OLS of log(total) against log(r).
ExponentFit exponent_fit(std::span<const double> r, std::span<const double> totals);
ExponentFit exponent_fit(std::span<const DecayRecord> series);

/// |E(b^-n)| for n = 0..n_max, exact.
std::vector<Rational> neighborhood_sequence(std::span<const Interval<Rational>> set, const Rational& base, int n_max);

/// Points center + k*spacing with |k*spacing| <= extent, as degenerate intervals.
std::vector<Interval<Rational>> lattice_points(const Rational& center, const Rational& spacing,
                                               const Rational& extent);

/// The grid {0, 1/4, 1/2, ..., 100}.
std::vector<Interval<Rational>> quarter_lattice();

struct LatticeStage {
  Rational center;
  Rational spacing;
  Rational extent;
};

struct SeesawResult {
  std::vector<Interval<Rational>> points;
  std::vector<Rational> sequence;
  std::optional<ConvexityReport> convexity;  // absent when n_max < 2
  int sign_changes = 0;                      // among nonzero second differences
  std::vector<std::string> warnings;
};

/// Union of finite lattices and its neighborhood sequence.
SeesawResult seesaw_builder(std::span<const LatticeStage> stages, const Rational& base, int n_max);

/// Reads one rational per line ('#' comments and blank lines skipped).
std::vector<Interval<Rational>> read_point_set(std::istream& in);

}  // namespace favard
