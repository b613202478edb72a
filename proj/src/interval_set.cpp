#include "favard/interval_set.hpp"

#include <array>
#include <charconv>

namespace favard {

namespace {

mpz_class to_mpz(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  const auto hi = static_cast<unsigned long>(u >> 64);
  const auto lo = static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL);
  mpz_class z = hi;
  z <<= 64;
  z += lo;
  return neg ? mpz_class(-z) : z;
}

}  // namespace

Rational ScaledIntervalSet::measure() const {
  __int128 total = 0;
  for (const auto& i : numerators) total += static_cast<__int128>(i.hi) - i.lo;
  return Rational(mpq_class(to_mpz(total))) * unit;
}

RationalIntervalSet ScaledIntervalSet::to_rational() const {
  std::vector<Interval<Rational>> out;
  out.reserve(numerators.count());
  for (const auto& i : numerators) {
    out.push_back({Rational(i.lo) * unit, Rational(i.hi) * unit});
  }
  return RationalIntervalSet::from_canonical(std::move(out));
}

std::string format_scalar(const Rational& x) { return x.str(); }

std::string format_scalar(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

}  // namespace favard
