#pragma once

#include <optional>
#include <span>
#include <vector>

#include "favard/ifs.hpp"
#include "favard/kernels.hpp"
#include "favard/projection.hpp"
#include "favard/rational.hpp"

namespace favard {

/// alpha_0 .. alpha_N at one direction, kept in sheared (exact) form.
/// Convexity is invariant under the positive scale, so it is checked here.
struct AlphaSequence {
  Direction direction;
  std::vector<Rational> values;
  std::vector<std::size_t> counts;  // merged interval count per generation
  double scale = 1.0;
  bool convexity_applies = false;

  std::vector<double> true_values() const;
};

AlphaSequence alpha_sequence(const IFS2D& ifs, const Direction& d, int n_max, std::size_t cap = kDefaultIntervalCap);

struct ConvexityReport {
  /// margins[k-1] = (a_{k-1} + a_{k+1}) - 2 a_k for interior k = 1..N-1.
  std::vector<Rational> margins;
  /// differences[k-1] = a_{k-1} - a_k for k = 1..N.
  std::vector<Rational> differences;
  bool convex = true;
  bool differences_nonincreasing = true;
  std::optional<int> first_violation;  // interior index k
};

/// Exact second-difference test. Needs at least three values.
ConvexityReport check_convexity(std::span<const Rational> values);

struct QuadratureConfig {
  int order = 8;
  int initial_panels = 4;
  int max_doublings = 10;
  double tol = 1e-6;
  Backend backend = Backend::Float;
  Execution exec = Execution::Parallel;
  bool use_symmetry = true;
  std::int64_t snap_denominator = kDefaultSnapDenominator;
  std::size_t cap = kDefaultIntervalCap;
};

enum class QuadStatus { Converged, Unconverged };

struct FavardEstimate {
  double value = 0.0;
  double error = 0.0;  // |last - previous| at the final refinement
  int panels = 0;      // per integration segment, final level
  std::size_t evaluations = 0;
  QuadStatus status = QuadStatus::Unconverged;
  std::vector<double> history;  // estimate per refinement level
};

/// Fav(A_n) = integral over [0, 2pi) of alpha_n, by composite Gauss-Legendre
/// with panel doubling. Period pi is always used; the square symmetry
/// (period pi/2, mirror about pi/4) is used when the IFS declares it.
FavardEstimate favard(const IFS2D& ifs, int n, const QuadratureConfig& cfg = {});

struct SpecialSlopeVerdict {
  bool pass = false;
  Rational alpha0;  // sheared
  Rational alpha1;
  Rational defect;  // alpha0 - alpha1
  std::size_t count1 = 0;
};

/// Exact test that the generation-1 pieces tile the base interval.
SpecialSlopeVerdict special_slope_check(const IFS2D& ifs, const Direction& d);

struct LipschitzConfig {
  int nodes = 10'000;
  double lo = 0.0;
  double hi = 3.14159265358979323846;  // half-open [lo, hi)
  Execution exec = Execution::Parallel;
  std::int64_t snap_denominator = kDefaultSnapDenominator;
};

struct LipschitzScan {
  std::vector<double> angles;
  std::vector<double> values;  // g = alpha_0 - alpha_1, true lengths
  double sup_slope = 0.0;
  double sup_location = 0.0;  // midpoint of the steepest pair
  double min_value = 0.0;
  double argmin = 0.0;
  /// Local minima of g that are zeros to within the scan resolution
  /// (g_i <= sup_slope * spacing).
  std::vector<double> zero_candidates;

  /// Zero candidate nearest to theta (NaN if none).
  double nearest_zero(double theta) const;
};

LipschitzScan lipschitz_scan(const IFS2D& ifs, const LipschitzConfig& cfg = {});

struct CertificateEntry {
  Direction direction;
  double angle = 0.0;
  Rational alpha0;
  Rational alpha1;
  Rational defect;       // alpha0 - alpha1
  Rational lower_bound;  // alpha0 - n * defect, sheared
  double true_lower_bound = 0.0;
  bool pass = false;
  std::optional<Rational> alpha_n;  // computed alpha_n when requested
};

struct CertificateOptions {
  Direction special{Chart::X, Rational(1, 2)};
  bool compute_alpha_n = false;
  Execution exec = Execution::Parallel;
  std::int64_t snap_denominator = kDefaultSnapDenominator;
};

struct Certificate {
  int n = 0;
  Direction special{Chart::X, Rational(1, 2)};
  double center = 0.0;
  double half_width = 0.0;
  std::vector<CertificateEntry> grid;
  double claimed_bound = 0.0;
  bool pass = false;
  std::optional<Direction> witness;  // first failing grid direction
};

/// Certifies alpha_n >= 1/2 on a grid spanning the window of angular length
/// 1/(20n) around the special direction, via the iterated convexity bound
/// alpha_n >= alpha_0 - n (alpha_0 - alpha_1). Each grid point is checked in
/// exact arithmetic: L >= 0 and 4 L^2 >= 1 + t^2. On success the claimed
/// lower bound on Fav(A_n) is 1/(40n). Rigorous at grid points only.
Certificate lower_bound_certificate(const IFS2D& ifs, int n, int grid_count, const CertificateOptions& opts = {});

}  // namespace favard
