#include "favard/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "favard/errors.hpp"
#include "favard/quadrature.hpp"

namespace favard {

std::vector<double> AlphaSequence::true_values() const {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.to_double() * scale);
  return out;
}

AlphaSequence alpha_sequence(const IFS2D& ifs, const Direction& d, int n_max, std::size_t cap) {
  if (n_max < 0) throw PreconditionError("n_max must be >= 0");
  AlphaSequence seq{d, {}, {}, d.scale(), ifs.convexity_applies()};
  ExactGenerator gen(project_ifs(ifs, d), cap);
  seq.values.push_back(gen.measure());
  seq.counts.push_back(gen.count());
  for (int n = 1; n <= n_max; ++n) {
    gen.advance();
    seq.values.push_back(gen.measure());
    seq.counts.push_back(gen.count());
  }
  return seq;
}

ConvexityReport check_convexity(std::span<const Rational> values) {
  if (values.size() < 3) throw PreconditionError("convexity check needs at least three values");
  ConvexityReport rep;
  for (std::size_t k = 1; k < values.size(); ++k) rep.differences.push_back(values[k - 1] - values[k]);
  for (std::size_t k = 1; k + 1 < values.size(); ++k) {
    Rational m = values[k - 1] + values[k + 1] - Rational(2) * values[k];
    if (m.sign() < 0 && rep.convex) {
      rep.convex = false;
      rep.first_violation = static_cast<int>(k);
    }
    rep.margins.push_back(std::move(m));
  }
  for (std::size_t k = 1; k < rep.differences.size(); ++k) {
    if (rep.differences[k - 1] < rep.differences[k]) rep.differences_nonincreasing = false;
  }
  return rep;
}

// ---------------------------------------------------------------------------

FavardEstimate favard(const IFS2D& ifs, int n, const QuadratureConfig& cfg) {
  if (n < 0) throw PreconditionError("generation index must be >= 0");
  if (cfg.initial_panels < 1 || cfg.order < 1 || cfg.max_doublings < 1)
    throw PreconditionError("quadrature needs order, panels and refinement limit >= 1");
  constexpr double pi = std::numbers::pi;

  struct Segment {
    double a, b;
  };
  std::vector<Segment> segments;
  double factor = 0;
  if (cfg.use_symmetry && ifs.symmetry() == Symmetry::Square) {
    segments = {{0.0, pi / 4}};
    factor = 8.0;
  } else {
    segments = {{-pi / 4, pi / 4}, {pi / 4, 3 * pi / 4}};
    factor = 2.0;
  }

  FavardEstimate est;
  int panels = cfg.initial_panels;
  for (int level = 0; level <= cfg.max_doublings; ++level, panels *= 2) {
    std::vector<double> weights;
    std::vector<Direction> dirs;
    for (const auto& seg : segments) {
      const auto q = composite_gauss_legendre(seg.a, seg.b, panels, cfg.order);
      for (std::size_t i = 0; i < q.x.size(); ++i) {
        dirs.push_back(Direction::from_angle(q.x[i], cfg.snap_denominator));
        weights.push_back(q.w[i]);
      }
    }
    const auto values = alpha_sweep(ifs, dirs, n, cfg.backend, cfg.exec, cfg.cap);
    double sum = 0;
    for (std::size_t i = 0; i < values.size(); ++i) sum += weights[i] * values[i];
    const double value = factor * sum;

    est.evaluations += values.size();
    est.panels = panels;
    if (!est.history.empty()) est.error = std::abs(value - est.history.back());
    est.history.push_back(value);
    est.value = value;
    if (est.history.size() >= 2 && est.error < cfg.tol) {
      est.status = QuadStatus::Converged;
      break;
    }
  }
  return est;
}

SpecialSlopeVerdict special_slope_check(const IFS2D& ifs, const Direction& d) {
  ExactGenerator gen(project_ifs(ifs, d));
  SpecialSlopeVerdict v;
  v.alpha0 = gen.measure();
  gen.advance();
  v.alpha1 = gen.measure();
  v.count1 = gen.count();
  v.defect = v.alpha0 - v.alpha1;
  v.pass = v.count1 == 1 && v.defect.is_zero();
  return v;
}

// ---------------------------------------------------------------------------

double LipschitzScan::nearest_zero(double theta) const {
  double best = std::numeric_limits<double>::quiet_NaN();
  for (double z : zero_candidates) {
    if (std::isnan(best) || std::abs(z - theta) < std::abs(best - theta)) best = z;
  }
  return best;
}

LipschitzScan lipschitz_scan(const IFS2D& ifs, const LipschitzConfig& cfg) {
  if (cfg.nodes < 3) throw PreconditionError("lipschitz scan needs at least 3 nodes");
  if (!(cfg.hi > cfg.lo)) throw PreconditionError("lipschitz scan needs lo < hi");
  constexpr double pi = std::numbers::pi;
  const auto count = static_cast<std::size_t>(cfg.nodes);
  const double spacing = (cfg.hi - cfg.lo) / cfg.nodes;

  struct Sample {
    double angle = 0, g = 0;
  };
  const auto samples = map_indices(
      count,
      [&](std::size_t i) {
        const double nominal = cfg.lo + static_cast<double>(i) * spacing;
        const auto d = Direction::from_angle(nominal, cfg.snap_denominator);
        double a = d.angle();
        while (a < nominal - pi / 2) a += pi;
        while (a > nominal + pi / 2) a -= pi;
        ExactGenerator gen(project_ifs(ifs, d));
        const Rational a0 = gen.measure();
        gen.advance();
        return Sample{a, (a0 - gen.measure()).to_double() * d.scale()};
      },
      cfg.exec);

  LipschitzScan scan;
  scan.angles.reserve(count);
  scan.values.reserve(count);
  for (const auto& s : samples) {
    scan.angles.push_back(s.angle);
    scan.values.push_back(s.g);
  }
  scan.min_value = scan.values.front();
  scan.argmin = scan.angles.front();
  for (std::size_t i = 0; i < count; ++i) {
    if (scan.values[i] < scan.min_value) {
      scan.min_value = scan.values[i];
      scan.argmin = scan.angles[i];
    }
    if (i + 1 < count) {
      const double dt = scan.angles[i + 1] - scan.angles[i];
      const double slope = std::abs(scan.values[i + 1] - scan.values[i]) / dt;
      if (slope > scan.sup_slope) {
        scan.sup_slope = slope;
        scan.sup_location = 0.5 * (scan.angles[i] + scan.angles[i + 1]);
      }
    }
  }
  const double zero_tol = scan.sup_slope * spacing;
  for (std::size_t i = 0; i < count; ++i) {
    const bool left = i == 0 || scan.values[i] <= scan.values[i - 1];
    const bool right = i + 1 == count || scan.values[i] <= scan.values[i + 1];
    if (left && right && scan.values[i] <= zero_tol) scan.zero_candidates.push_back(scan.angles[i]);
  }
  return scan;
}

// ---------------------------------------------------------------------------

Certificate lower_bound_certificate(const IFS2D& ifs, int n, int grid_count, const CertificateOptions& opts) {
  if (n < 1) throw PreconditionError("certificate needs n >= 1");
  if (grid_count < 1) throw PreconditionError("certificate needs at least one grid direction");
  if (!ifs.convexity_applies())
    throw PreconditionError("certificate requires ratios summing to 1 (got " + ifs.ratio_sum().str() + ")");
  if (!validate(ifs, 0).nesting_pass) throw PreconditionError("certificate requires nested generations");
  if (!special_slope_check(ifs, opts.special).pass)
    throw PreconditionError("direction " + opts.special.label() + " is not a tiling direction");

  Certificate cert;
  cert.n = n;
  cert.special = opts.special;
  cert.center = opts.special.angle();
  cert.half_width = 1.0 / (40.0 * n);

  const Rational threshold(1, 2);
  cert.grid = map_indices(
      static_cast<std::size_t>(grid_count),
      [&](std::size_t i) {
        const double frac = grid_count == 1 ? 0.5 : static_cast<double>(i) / (grid_count - 1);
        const double theta = cert.center - cert.half_width + 2 * cert.half_width * frac;
        const auto d = Direction::from_angle(theta, opts.snap_denominator);
        ExactGenerator gen(project_ifs(ifs, d));
        CertificateEntry e{d, d.angle(), gen.measure(), {}, {}, {}, 0.0, false, std::nullopt};
        gen.advance();
        e.alpha1 = gen.measure();
        e.defect = e.alpha0 - e.alpha1;
        e.lower_bound = e.alpha0 - Rational(n) * e.defect;
        e.true_lower_bound = e.lower_bound.to_double() * d.scale();
        // L * scale >= 1/2  <=>  L >= 0 and L^2 >= (1/4)(1 + t^2)
        e.pass = e.lower_bound.sign() >= 0 &&
                 e.lower_bound * e.lower_bound * d.scale_squared() >= threshold * threshold;
        if (opts.compute_alpha_n) {
          gen.advance_to(n);
          e.alpha_n = gen.measure();
        }
        return e;
      },
      opts.exec);

  cert.pass = true;
  for (const auto& e : cert.grid) {
    if (!e.pass) {
      cert.pass = false;
      cert.witness = e.direction;
      break;
    }
  }
  cert.claimed_bound = cert.pass ? 1.0 / (40.0 * n) : 0.0;
  return cert;
}

}  // namespace favard
