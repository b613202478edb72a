#include "favard/dimension.hpp"

#include <cmath>
#include <istream>
#include <string>

#include "favard/errors.hpp"
#include "favard/quadrature.hpp"

namespace favard {

int matched_depth(const IFS2D& ifs, const Rational& r) {
  if (r.sign() <= 0) throw PreconditionError("scale must be positive");
  const Rational& rho = ifs.max_ratio();
  int n = 0;
  Rational size(1);
  while (size > r) {
    size *= rho;
    ++n;
  }
  return n;
}

double expanded_projection_length(const IFS2D& ifs, const Direction& d, int depth, double r, std::size_t cap) {
  const double scale = d.scale();
  const auto sheared = generation_float(project_ifs(ifs, d), depth, cap);
  return sheared.affine(scale, 0.0).expand(r).measure();
}

std::vector<DecayRecord> decay_series(const IFS2D& ifs, const AngularWindow& window, std::span<const Rational> scales,
                                      const DecayConfig& cfg) {
  if (!(window.hi > window.lo)) throw PreconditionError("empty angular window");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (scales[i].sign() <= 0) throw PreconditionError("scales must be positive");
    if (i > 0 && !(scales[i] < scales[i - 1])) throw PreconditionError("scales must be strictly decreasing");
  }
  const auto q = composite_gauss_legendre(window.lo, window.hi, cfg.panels, cfg.order);
  std::vector<Direction> dirs;
  dirs.reserve(q.x.size());
  for (double x : q.x) dirs.push_back(Direction::from_angle(x, cfg.snap_denominator));

  auto integrate = [&](int depth, double r) {
    const auto values = map_indices(
        dirs.size(), [&](std::size_t i) { return expanded_projection_length(ifs, dirs[i], depth, r, cfg.cap); },
        cfg.exec);
    double sum = 0;
    for (std::size_t i = 0; i < values.size(); ++i) sum += q.w[i] * values[i];
    return sum;
  };

  std::vector<DecayRecord> out;
  out.reserve(scales.size());
  for (const auto& r : scales) {
    DecayRecord rec;
    rec.r = r;
    rec.depth = matched_depth(ifs, r);
    const double rd = r.to_double();
    rec.total = integrate(rec.depth, rd);
    if (cfg.sensitivity) {
      if (rec.depth > 0) rec.total_coarser = integrate(rec.depth - 1, rd);
      rec.total_finer = integrate(rec.depth + 1, rd);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------------------

CoverStatistic cover_stats(const IFS2D& ifs, const Direction& d, const Rational& r, std::span<const double> exponents,
                           int depth, std::size_t cap) {
  if (r.sign() <= 0) throw PreconditionError("cover radius must be positive");
  for (double p : exponents) {
    if (!(p > 0.0 && p < 1.0)) throw PreconditionError("Hoelder exponents must lie in (0,1)");
  }
  CoverStatistic st;
  st.r = r;
  st.direction = d;
  st.depth = depth < 0 ? matched_depth(ifs, r) : depth;

  const double rd = r.to_double();
  if (const auto scale = d.scale_squared().exact_sqrt()) {
    ExactGenerator gen(project_ifs(ifs, d), cap);
    gen.advance_to(st.depth);
    auto cover = gen.set().affine(*scale, Rational(0)).expand(r);
    st.exact = true;
    st.count = cover.count();
    st.exact_measure = cover.measure();
    st.exact_min_length = cover.min_length();
    st.measure = st.exact_measure->to_double();
    st.min_length = st.exact_min_length->to_double();
    st.floor_holds = *st.exact_min_length >= Rational(2) * r;
    st.ceiling_holds = Rational(static_cast<long>(st.count)) * Rational(2) * r <= *st.exact_measure;
    std::vector<Interval<double>> iv;
    iv.reserve(cover.count());
    for (const auto& i : cover) iv.push_back({i.lo.to_double(), i.hi.to_double()});
    st.intervals = FloatIntervalSet::from_canonical(std::move(iv));
    st.exact_intervals = std::move(cover);
  } else {
    const auto sheared = generation_float(project_ifs(ifs, d), st.depth, cap);
    st.intervals = sheared.affine(d.scale(), 0.0).expand(rd);
    st.count = st.intervals.count();
    st.measure = st.intervals.measure();
    st.min_length = st.intervals.min_length();
    // float lengths carry rounding of order 1e-15 relative
    const double slack = 1e-12 * std::max(1.0, st.measure);
    st.floor_holds = st.min_length >= 2 * rd - slack;
    st.ceiling_holds = static_cast<double>(st.count) * 2 * rd <= st.measure + slack;
  }

  for (double p : exponents) {
    HolderEntry h;
    h.p = p;
    h.q = p / (1.0 - p);
    if (st.exact_intervals) {
      for (const auto& i : *st.exact_intervals) h.sum += std::pow(i.length().to_double(), p);
    } else {
      for (const auto& i : st.intervals) h.sum += std::pow(i.length(), p);
    }
    h.bound = std::pow(st.measure, p) * std::pow(static_cast<double>(st.count), 1.0 - p);
    h.consistent = h.sum <= h.bound * (1 + 1e-12);
    st.holder.push_back(h);
  }
  return st;
}

// ---------------------------------------------------------------------------

ExponentFit exponent_fit(std::span<const double> r, std::span<const double> totals) {
  if (r.size() != totals.size()) throw PreconditionError("scale and total series differ in length");
  if (r.size() < 3) throw PreconditionError("exponent fit needs at least 3 records");
  const auto n = static_cast<double>(r.size());
  double mx = 0, my = 0;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0) || !(totals[i] > 0)) throw PreconditionError("exponent fit needs positive scales and totals");
    lx.push_back(std::log(r[i]));
    ly.push_back(std::log(totals[i]));
    mx += lx.back();
    my += ly.back();
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx <= 1e-300) throw PreconditionError("degenerate fit: all scales equal");
  ExponentFit fit;
  fit.points = lx.size();
  fit.s = sxy / sxx;
  const double intercept = my - fit.s * mx;
  fit.C = std::exp(intercept);
  for (std::size_t i = 0; i < lx.size(); ++i) {
    fit.residual = std::max(fit.residual, std::abs(ly[i] - (intercept + fit.s * lx[i])));
  }
  fit.dimension_bound = 1.0 - fit.s;
  return fit;
}

ExponentFit exponent_fit(std::span<const DecayRecord> series) {
  std::vector<double> r, t;
  for (const auto& rec : series) {
    r.push_back(rec.r.to_double());
    t.push_back(rec.total);
  }
  return exponent_fit(r, t);
}

// ---------------------------------------------------------------------------

std::vector<Rational> neighborhood_sequence(std::span<const Interval<Rational>> set, const Rational& base, int n_max) {
  if (base <= Rational(1)) throw PreconditionError("neighborhood base must exceed 1");
  if (n_max < 0) throw PreconditionError("n_max must be >= 0");
  std::vector<Rational> out;
  Rational r(1);
  for (int n = 0; n <= n_max; ++n, r /= base) {
    out.push_back(set.empty() ? Rational(0) : neighborhood<Rational>(set, r).measure());
  }
  return out;
}

std::vector<Interval<Rational>> lattice_points(const Rational& center, const Rational& spacing,
                                               const Rational& extent) {
  if (spacing.sign() <= 0) throw PreconditionError("lattice spacing must be positive");
  if (extent.sign() < 0) throw PreconditionError("lattice extent must be >= 0");
  const Rational steps = extent / spacing;
  mpz_class k;
  mpz_fdiv_q(k.get_mpz_t(), steps.raw().get_num_mpz_t(), steps.raw().get_den_mpz_t());
  if (!k.fits_slong_p() || k > 10'000'000) throw PreconditionError("lattice has too many points");
  const long m = k.get_si();
  std::vector<Interval<Rational>> pts;
  pts.reserve(static_cast<std::size_t>(2 * m + 1));
  for (long i = -m; i <= m; ++i) {
    const Rational p = center + Rational(i) * spacing;
    pts.push_back({p, p});
  }
  return pts;
}

std::vector<Interval<Rational>> quarter_lattice() { return lattice_points(Rational(50), Rational(1, 4), Rational(50)); }

SeesawResult seesaw_builder(std::span<const LatticeStage> stages, const Rational& base, int n_max) {
  SeesawResult res;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    auto pts = lattice_points(stages[i].center, stages[i].spacing, stages[i].extent);
    res.points.insert(res.points.end(), pts.begin(), pts.end());
    for (std::size_t j = 0; j < i; ++j) {
      const auto& a = stages[j];
      const auto& b = stages[i];
      if (a.center - a.extent <= b.center + b.extent && b.center - b.extent <= a.center + a.extent) {
        res.warnings.push_back("stages " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
      }
    }
  }
  res.sequence = neighborhood_sequence(res.points, base, n_max);
  if (res.sequence.size() >= 3) {
    res.convexity = check_convexity(res.sequence);
    int last = 0;
    for (const auto& m : res.convexity->margins) {
      const int s = m.sign();
      if (s == 0) continue;
      if (last != 0 && s != last) ++res.sign_changes;
      last = s;
    }
  }
  return res;
}

std::vector<Interval<Rational>> read_point_set(std::istream& in) {
  std::vector<Interval<Rational>> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const Rational p = Rational::parse(line);
    pts.push_back({p, p});
  }
  return pts;
}

}  // namespace favard
