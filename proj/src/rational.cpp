#include "favard/rational.hpp"

#include <cctype>
#include <cmath>

#include "favard/errors.hpp"

namespace favard {

Rational::Rational(long num, long den) {
  if (den == 0) throw MalformedInput("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw MalformedInput("division by zero");
  v_ /= o.v_;
  return *this;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

mpz_class parse_signed_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw MalformedInput("not a rational number: '" + std::string(whole) + "'");
  mpz_class z(std::string(s), 10);
  return neg ? mpz_class(-z) : z;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw MalformedInput("empty rational literal");

  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const mpz_class num = parse_signed_integer(trim(s.substr(0, slash)), text);
    const std::string_view den_text = trim(s.substr(slash + 1));
    if (!all_digits(den_text)) throw MalformedInput("bad denominator in '" + std::string(text) + "'");
    const mpz_class den(std::string(den_text), 10);
    if (den == 0) throw MalformedInput("zero denominator in '" + std::string(text) + "'");
    return Rational(mpq_class(num, den));
  }

  // Finite decimal: [sign] digits [. digits] [e [sign] digits]
  std::string_view mant = s;
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mant = s.substr(0, e);
    const mpz_class ex = parse_signed_integer(s.substr(e + 1), text);
    if (!ex.fits_slong_p() || abs(ex) > 4096) throw MalformedInput("exponent out of range in '" + std::string(text) + "'");
    exponent = ex.get_si();
  }
  bool neg = false;
  if (!mant.empty() && (mant.front() == '+' || mant.front() == '-')) {
    neg = mant.front() == '-';
    mant.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  if (const auto dot = mant.find('.'); dot != std::string_view::npos) {
    const std::string_view ip = mant.substr(0, dot);
    const std::string_view fp = mant.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw MalformedInput("not a rational number: '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    frac_digits = static_cast<long>(fp.size());
  } else {
    if (!all_digits(mant)) throw MalformedInput("not a rational number: '" + std::string(text) + "'");
    digits = std::string(mant);
  }
  mpz_class num(digits, 10);
  if (neg) num = -num;
  const long shift = exponent - frac_digits;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  return shift >= 0 ? Rational(mpq_class(num * p10)) : Rational(mpq_class(num, p10));
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) throw MalformedInput("non-finite value has no rational form");
  return Rational(mpq_class(x));
}

Rational Rational::best_approximation(double x, std::int64_t max_den) {
  return best_approximation(from_double(x), max_den);
}

Rational Rational::best_approximation(const Rational& x, std::int64_t max_den) {
  if (max_den < 1) throw MalformedInput("max_den must be >= 1");
  const mpz_class limit(static_cast<long>(max_den));
  if (x.den() <= limit) return x;

  // Convergents h_k/k_k of the continued fraction of x.
  mpz_class h_prev = 0, k_prev = 1, h = 1, k = 0;
  mpq_class rest = x.raw();
  while (true) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    const mpz_class k_next = k_prev + a * k;
    if (k_next > limit) break;
    const mpz_class h_next = h_prev + a * h;
    h_prev = h; k_prev = k; h = h_next; k = k_next;
    const mpq_class frac = rest - mpq_class(a);
    if (frac == 0) break;
    rest = 1 / frac;
  }
  // Largest admissible semiconvergent vs the last convergent.
  const mpz_class j = (limit - k_prev) / k;
  const mpq_class semi(h_prev + j * h, k_prev + j * k);
  const mpq_class conv(h, k);
  const mpq_class ds = abs(semi - x.raw());
  const mpq_class dc = abs(conv - x.raw());
  return Rational(ds < dc ? semi : conv);
}

std::optional<Rational> Rational::exact_sqrt() const {
  if (sign() < 0) return std::nullopt;
  const mpz_class n = num(), d = den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rational(mpq_class(rn, rd));
}

Rational Rational::pow(long k) const {
  if (k < 0) {
    if (is_zero()) throw MalformedInput("zero to a negative power");
    return Rational(1) / pow(-k);
  }
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(k));
  return Rational(mpq_class(n, d));
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace favard
