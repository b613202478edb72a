#include "favard/projection.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "favard/errors.hpp"

namespace favard {

Direction::Direction(Chart chart, Rational slope) : chart_(chart), slope_(std::move(slope)) {
  if (abs(slope_) > Rational(1)) throw MalformedInput("direction slope must satisfy |slope| <= 1, got " + slope_.str());
}

Direction Direction::from_angle(double theta, std::int64_t max_den) {
  if (!std::isfinite(theta)) throw MalformedInput("non-finite angle");
  constexpr double pi = std::numbers::pi;
  // reduce to [-pi/4, 3pi/4)
  double t = std::fmod(theta + pi / 4, pi);
  if (t < 0) t += pi;
  t -= pi / 4;
  if (t <= pi / 4) {
    const double slope = std::clamp(std::tan(t), -1.0, 1.0);
    return {Chart::X, Rational::best_approximation(slope, max_den)};
  }
  const double slope = std::clamp(std::tan(pi / 2 - t), -1.0, 1.0);
  return {Chart::Y, Rational::best_approximation(slope, max_den)};
}

double Direction::angle() const {
  const double s = slope_.to_double();
  return chart_ == Chart::X ? std::atan(s) : std::numbers::pi / 2 - std::atan(s);
}

double Direction::scale() const {
  const double s = slope_.to_double();
  return 1.0 / std::sqrt(1.0 + s * s);
}

std::string Direction::label() const { return std::string(chart_ == Chart::X ? "X:" : "Y:") + slope_.str(); }

Interval<Rational> project_rect(const Rect& r, const Direction& d) {
  const Rational a = d.functional({r.x0, r.y0});
  const Rational b = d.functional({r.x1, r.y0});
  const Rational c = d.functional({r.x0, r.y1});
  const Rational e = d.functional({r.x1, r.y1});
  return {min(min(a, b), min(c, e)), max(max(a, b), max(c, e))};
}

ProjectedIFS1D project_ifs(const IFS2D& ifs, const Direction& d) {
  ProjectedIFS1D p;
  p.maps.reserve(ifs.size());
  for (const auto& f : ifs.maps()) p.maps.push_back({f.ratio, d.functional(f.translation)});
  p.base_interval = project_rect(ifs.base(), d);
  return p;
}

// ---------------------------------------------------------------------------
// ExactGenerator

namespace {

constexpr std::int64_t kScaledBound = std::int64_t{1} << 62;

bool fits_scaled(const mpz_class& z) {
  return z.fits_slong_p() && z.get_si() < kScaledBound && z.get_si() > -kScaledBound;
}

bool affine_i64(std::int64_t a, std::int64_t x, std::int64_t c, std::int64_t& out) {
  std::int64_t ax = 0;
  if (__builtin_mul_overflow(a, x, &ax)) return false;
  if (__builtin_add_overflow(ax, c, &out)) return false;
  return out < kScaledBound && out > -kScaledBound;
}

}  // namespace

ExactGenerator::ExactGenerator(const ProjectedIFS1D& p, std::size_t cap, bool allow_fast_path)
    : p_(p), cap_(cap) {
  if (p_.maps.empty()) throw PreconditionError("projected IFS has no maps");
  exact_ = RationalIntervalSet::normalize({p_.base_interval});
  if (!allow_fast_path) return;

  mpz_class d0 = p_.base_interval.lo.den();
  d0 = lcm(d0, p_.base_interval.hi.den());
  mpz_class b = 1;
  for (const auto& m : p_.maps) {
    d0 = lcm(d0, m.offset.den());
    b = lcm(b, m.ratio.den());
  }
  std::vector<std::int64_t> scaled_ratio;
  for (const auto& m : p_.maps) {
    const mpz_class a = m.ratio.num() * (b / m.ratio.den());
    if (!fits_scaled(a)) return;
    scaled_ratio.push_back(a.get_si());
  }
  const mpz_class lo = p_.base_interval.lo.num() * (d0 / p_.base_interval.lo.den());
  const mpz_class hi = p_.base_interval.hi.num() * (d0 / p_.base_interval.hi.den());
  if (!fits_scaled(lo) || !fits_scaled(hi)) return;

  denom_ = d0;
  ratio_lcm_ = b;
  scaled_ratio_ = std::move(scaled_ratio);
  scaled_.unit = Rational(mpq_class(mpz_class(1), denom_));
  scaled_.numerators = IntervalSet<std::int64_t>::normalize({{lo.get_si(), hi.get_si()}});
  fast_ = true;
}

void ExactGenerator::check_cap(std::size_t count) const {
  if (count > cap_) {
    throw SizeCapExceeded("merged interval count " + std::to_string(count) + " exceeds cap " + std::to_string(cap_) +
                          " at generation " + std::to_string(depth_ + 1));
  }
}

bool ExactGenerator::try_advance_scaled() {
  const mpz_class next_denom = denom_ * ratio_lcm_;
  std::vector<std::int64_t> shift;
  shift.reserve(p_.maps.size());
  for (const auto& m : p_.maps) {
    // offset * next_denom is an integer: den(offset) | D0 | next_denom
    const mpz_class c = m.offset.num() * (next_denom / m.offset.den());
    if (!fits_scaled(c)) return false;
    shift.push_back(c.get_si());
  }
  const auto& cur = scaled_.numerators.intervals();
  std::vector<Interval<std::int64_t>> raw;
  raw.reserve(cur.size() * p_.maps.size());
  for (std::size_t i = 0; i < p_.maps.size(); ++i) {
    for (const auto& iv : cur) {
      Interval<std::int64_t> img;
      if (!affine_i64(scaled_ratio_[i], iv.lo, shift[i], img.lo)) return false;
      if (!affine_i64(scaled_ratio_[i], iv.hi, shift[i], img.hi)) return false;
      raw.push_back(img);
    }
  }
  auto merged = IntervalSet<std::int64_t>::normalize(std::move(raw));
  check_cap(merged.count());
  scaled_.numerators = std::move(merged);
  denom_ = next_denom;
  scaled_.unit = Rational(mpq_class(mpz_class(1), denom_));
  return true;
}

void ExactGenerator::advance_rational() {
  std::vector<Interval<Rational>> raw;
  raw.reserve(exact_.count() * p_.maps.size());
  for (const auto& m : p_.maps) {
    for (const auto& iv : exact_) raw.push_back({m.ratio * iv.lo + m.offset, m.ratio * iv.hi + m.offset});
  }
  auto merged = RationalIntervalSet::normalize(std::move(raw));
  check_cap(merged.count());
  exact_ = std::move(merged);
}

void ExactGenerator::advance() {
  if (fast_) {
    if (try_advance_scaled()) {
      ++depth_;
      return;
    }
    exact_ = scaled_.to_rational();
    fast_ = false;
  }
  advance_rational();
  ++depth_;
}

void ExactGenerator::advance_to(int n) {
  if (n < depth_) throw PreconditionError("generator cannot move backwards");
  while (depth_ < n) advance();
}

Rational ExactGenerator::measure() const { return fast_ ? scaled_.measure() : exact_.measure(); }

std::size_t ExactGenerator::count() const { return fast_ ? scaled_.numerators.count() : exact_.count(); }

RationalIntervalSet ExactGenerator::set() const { return fast_ ? scaled_.to_rational() : exact_; }

// ---------------------------------------------------------------------------

GenerationSet generation(const ProjectedIFS1D& p, const Direction& d, int n, std::size_t cap) {
  if (n < 0) throw PreconditionError("generation index must be >= 0");
  ExactGenerator gen(p, cap);
  gen.advance_to(n);
  return {n, d, gen.set()};
}

GenerationSet generation(const IFS2D& ifs, const Direction& d, int n, std::size_t cap) {
  return generation(project_ifs(ifs, d), d, n, cap);
}

FloatIntervalSet generation_float(const ProjectedIFS1D& p, int n, std::size_t cap) {
  if (n < 0) throw PreconditionError("generation index must be >= 0");
  std::vector<std::pair<double, double>> maps;
  maps.reserve(p.maps.size());
  for (const auto& m : p.maps) maps.emplace_back(m.ratio.to_double(), m.offset.to_double());
  auto cur = FloatIntervalSet::normalize({{p.base_interval.lo.to_double(), p.base_interval.hi.to_double()}});
  for (int k = 0; k < n; ++k) {
    std::vector<Interval<double>> raw;
    raw.reserve(cur.count() * maps.size());
    for (const auto& [r, c] : maps) {
      for (const auto& iv : cur) raw.push_back({r * iv.lo + c, r * iv.hi + c});
    }
    cur = FloatIntervalSet::normalize(std::move(raw));
    if (cur.count() > cap) {
      throw SizeCapExceeded("merged interval count " + std::to_string(cur.count()) + " exceeds cap " +
                            std::to_string(cap) + " at generation " + std::to_string(k + 1));
    }
  }
  return cur;
}

ExactAlpha alpha_exact(const IFS2D& ifs, const Direction& d, int n, std::size_t cap) {
  if (n < 0) throw PreconditionError("generation index must be >= 0");
  ExactGenerator gen(project_ifs(ifs, d), cap);
  gen.advance_to(n);
  return {gen.measure(), d.scale()};
}

double alpha(const IFS2D& ifs, const Direction& d, int n, Backend backend, std::size_t cap) {
  if (backend == Backend::Exact) return alpha_exact(ifs, d, n, cap).true_length();
  return generation_float(project_ifs(ifs, d), n, cap).measure() * d.scale();
}

}  // namespace favard
