#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "favard/errors.hpp"
#include "favard/rational.hpp"

namespace favard {

/// Closed interval [lo, hi] with lo <= hi.
template <class T>
struct Interval {
  T lo{};
  T hi{};

  T length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational merge_epsilon() { return Rational(0); }
  static constexpr bool exact = true;
};

template <>
struct ScalarTraits<std::int64_t> {
  static std::int64_t zero() { return 0; }
  static std::int64_t merge_epsilon() { return 0; }
  static constexpr bool exact = true;
};

/// Float backend: gaps narrower than 1e-12 are treated as touching.
template <>
struct ScalarTraits<double> {
  static double zero() { return 0.0; }
  static double merge_epsilon() { return 1e-12; }
  static constexpr bool exact = false;
};

/// Canonical finite union of closed intervals: sorted by lo, pairwise
/// disjoint with strictly positive gaps (touching intervals are merged),
/// no degenerate members.
template <class T>
class IntervalSet {
 public:
  using value_type = Interval<T>;

  IntervalSet() = default;

  /// Sort-then-sweep merge of an arbitrary list. Rejects lo > hi.
  static IntervalSet normalize(std::vector<Interval<T>> raw);

  /// Wraps intervals already known to be canonical (used by kernels that
  /// preserve order, e.g. positive affine maps). Not validated.
  static IntervalSet from_canonical(std::vector<Interval<T>> iv) {
    IntervalSet s;
    s.iv_ = std::move(iv);
    return s;
  }

  const std::vector<Interval<T>>& intervals() const { return iv_; }
  std::size_t count() const { return iv_.size(); }
  bool empty() const { return iv_.empty(); }
  auto begin() const { return iv_.begin(); }
  auto end() const { return iv_.end(); }
  const Interval<T>& operator[](std::size_t i) const { return iv_[i]; }

  /// Sum of lengths, accumulated in ascending-lo order.
  T measure() const {
    T total = ScalarTraits<T>::zero();
    for (const auto& i : iv_) total += i.length();
    return total;
  }

  /// Shortest member length; zero for the empty set.
  T min_length() const {
    if (iv_.empty()) return ScalarTraits<T>::zero();
    T m = iv_.front().length();
    for (const auto& i : iv_) {
      if (i.length() < m) m = i.length();
    }
    return m;
  }

  /// r-neighborhood: every [a,b] becomes [a-r, b+r], then re-merge.
  IntervalSet expand(const T& r) const;

  /// Image under x -> c*x + d with c > 0 (order preserving, stays canonical
  /// for exact scalars).
  IntervalSet affine(const T& c, const T& d) const {
    if (!(ScalarTraits<T>::zero() < c)) throw PreconditionError("affine map needs a positive factor");
    std::vector<Interval<T>> out;
    out.reserve(iv_.size());
    for (const auto& i : iv_) out.push_back({c * i.lo + d, c * i.hi + d});
    if constexpr (ScalarTraits<T>::exact) {
      return from_canonical(std::move(out));
    } else {
      return normalize(std::move(out));
    }
  }

  /// Point-set inclusion: every member of `inner` lies inside one member of
  /// this set.
  bool contains(const IntervalSet& inner) const {
    std::size_t j = 0;
    for (const auto& in : inner.iv_) {
      while (j < iv_.size() && iv_[j].hi < in.lo) ++j;
      if (j == iv_.size() || in.lo < iv_[j].lo || iv_[j].hi < in.hi) return false;
    }
    return true;
  }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval<T>> iv_;
};

template <class T>
IntervalSet<T> IntervalSet<T>::normalize(std::vector<Interval<T>> raw) {
  for (const auto& i : raw) {
    if (i.hi < i.lo) throw MalformedInput("interval with lo > hi");
  }
  std::sort(raw.begin(), raw.end(), [](const Interval<T>& a, const Interval<T>& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  const T eps = ScalarTraits<T>::merge_epsilon();
  std::vector<Interval<T>> out;
  out.reserve(raw.size());
  for (auto& i : raw) {
    if (!out.empty()) {
      auto& last = out.back();
      const bool joins = ScalarTraits<T>::exact ? !(last.hi < i.lo) : (i.lo - last.hi < eps);
      if (joins) {
        if (last.hi < i.hi) last.hi = std::move(i.hi);
        continue;
      }
    }
    out.push_back(std::move(i));
  }
  std::erase_if(out, [](const Interval<T>& i) { return i.lo == i.hi; });
  IntervalSet s;
  s.iv_ = std::move(out);
  return s;
}

/// r-neighborhood of an arbitrary (possibly degenerate, unsorted) list,
/// e.g. a finite point set stored as [p, p].
template <class T>
IntervalSet<T> neighborhood(std::span<const Interval<T>> raw, const T& r) {
  if (!(ScalarTraits<T>::zero() < r)) throw PreconditionError("neighborhood radius must be positive");
  std::vector<Interval<T>> grown;
  grown.reserve(raw.size());
  for (const auto& i : raw) {
    if (i.hi < i.lo) throw MalformedInput("interval with lo > hi");
    grown.push_back({i.lo - r, i.hi + r});
  }
  return IntervalSet<T>::normalize(std::move(grown));
}

template <class T>
IntervalSet<T> IntervalSet<T>::expand(const T& r) const {
  return neighborhood<T>(std::span<const Interval<T>>(iv_), r);
}

template <class T>
IntervalSet<T> normalize(std::vector<Interval<T>> raw) {
  return IntervalSet<T>::normalize(std::move(raw));
}

template <class T>
T measure(const IntervalSet<T>& s) {
  return s.measure();
}

template <class T>
IntervalSet<T> expand(const IntervalSet<T>& s, const T& r) {
  return s.expand(r);
}

using RationalIntervalSet = IntervalSet<Rational>;
using FloatIntervalSet = IntervalSet<double>;

/// Exact interval set whose endpoints share a common denominator: the real
/// endpoint is numerator * unit. Merging is pure integer comparison.
struct ScaledIntervalSet {
  IntervalSet<std::int64_t> numerators;
  Rational unit{1};

  Rational measure() const;
  RationalIntervalSet to_rational() const;
};

/// Shortest round-trip decimal for doubles, "p/q" for rationals.
std::string format_scalar(const Rational& x);
std::string format_scalar(double x);

}  // namespace favard
