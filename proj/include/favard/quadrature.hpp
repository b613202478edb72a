#pragma once

#include <vector>

namespace favard {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Newton iteration on P_n from the Chebyshev-like initial guess.
GaussLegendreRule gauss_legendre(int order);

struct QuadratureNodes {
  std::vector<double> x;
  std::vector<double> w;
};

/// `panels` equal subintervals of [a, b], each carrying an `order`-point rule.
QuadratureNodes composite_gauss_legendre(double a, double b, int panels, int order);

}  // namespace favard
