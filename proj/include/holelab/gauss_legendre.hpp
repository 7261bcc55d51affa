#pragma once

#include <functional>
#include <vector>

namespace holelab {

/// Gauss-Legendre rule on [-1, 1].
struct GlRule {
  std::vector<double> x;  // nodes, ascending
  std::vector<double> w;  // weights
};

/// Nodes and weights for an n-point rule (Newton iteration on P_n).
/// Cached per n; thread-safe.
const GlRule& gauss_legendre(int n);

/// Integral of f over [a, b] with an n-point rule.
double gl_integrate(const std::function<double(double)>& f, double a, double b, int n);

}  // namespace holelab
