#pragma once

// Brute-force references used only by the tests. Nothing here calls the
// sort-and-sweep merge or the generation engine.

#include <algorithm>
#include <random>
#include <vector>

#include "favard/ifs.hpp"
#include "favard/interval_set.hpp"
#include "favard/rational.hpp"

namespace favard::oracle {

/// Lebesgue measure of a union of closed intervals: split the line at every
/// endpoint and add each elementary piece whose midpoint is covered. O(n^2).
template <class T>
T union_measure(const std::vector<Interval<T>>& raw) {
  std::vector<T> cuts;
  for (const auto& i : raw) {
    cuts.push_back(i.lo);
    cuts.push_back(i.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  T total{};
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const T mid = (cuts[k] + cuts[k + 1]) / T(2);
    const bool covered =
        std::any_of(raw.begin(), raw.end(), [&](const Interval<T>& i) { return !(mid < i.lo) && !(i.hi < mid); });
    if (covered) total += cuts[k + 1] - cuts[k];
  }
  return total;
}

/// Number of connected components of a union of closed intervals.
template <class T>
std::size_t union_components(std::vector<Interval<T>> raw) {
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  std::size_t count = 0;
  bool open = false;
  T reach{};
  for (const auto& i : raw) {
    if (!open || reach < i.lo) {
      ++count;
      reach = i.hi;
      open = true;
    } else if (reach < i.hi) {
      reach = i.hi;
    }
  }
  return count;
}

/// All N^n cylinders f_{i1} o ... o f_{in}(base) as rectangles.
inline std::vector<Rect> cylinders(const IFS2D& ifs, int n) {
  std::vector<Rect> cur{ifs.base()};
  for (int k = 0; k < n; ++k) {
    std::vector<Rect> next;
    for (const auto& f : ifs.maps()) {
      for (const auto& r : cur) next.push_back(f.apply(r));
    }
    cur = std::move(next);
  }
  return cur;
}

/// Projections of every cylinder through the functional x + t*y (chart X).
inline std::vector<Interval<Rational>> projected_cylinders(const IFS2D& ifs, const Rational& t, int n) {
  std::vector<Interval<Rational>> out;
  for (const auto& r : cylinders(ifs, n)) {
    const Rational a = r.x0 + t * r.y0, b = r.x1 + t * r.y0, c = r.x0 + t * r.y1, d = r.x1 + t * r.y1;
    out.push_back({min(min(a, b), min(c, d)), max(max(a, b), max(c, d))});
  }
  return out;
}

/// Random raw interval list with small-denominator rational endpoints.
inline std::vector<Interval<Rational>> random_rational_intervals(std::mt19937_64& rng, int max_count) {
  std::uniform_int_distribution<int> count_dist(0, max_count);
  std::uniform_int_distribution<long> num(-40, 40);
  std::uniform_int_distribution<long> den(1, 8);
  std::uniform_int_distribution<long> len(0, 16);
  std::vector<Interval<Rational>> out;
  const int n = count_dist(rng);
  for (int i = 0; i < n; ++i) {
    const Rational lo(num(rng), den(rng));
    out.push_back({lo, lo + Rational(len(rng), den(rng))});
  }
  return out;
}

}  // namespace favard::oracle
