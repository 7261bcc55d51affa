#pragma once

#include <complex>
#include <span>
#include <vector>

#include "holelab/window.hpp"

namespace holelab::rootfind {

using cplx = std::complex<double>;

/// All n roots of one sampled polynomial. The rho-fold root at the origin
/// (coefficients vanish below index rho) is appended analytically, so
/// roots.size() equals the degree. residuals[i] is the relative backward
/// error |f(w_i)| / sum_j |c_j| |w_i|^j.
struct RootSet {
  std::vector<cplx> roots;
  std::vector<double> residuals;
  int iterations = 0;
  bool converged = false;

  double max_residual() const;
};

inline constexpr double backward_error_tol = 1e-10;
inline constexpr int max_sweeps = 200;

/// Aberth-Ehrlich simultaneous iteration on the cofactor after factoring
/// z^rho, Newton-polygon initialization, two Newton polishing steps, and
/// compensated-Horner backward-error certificates. Fails soft: a solve
/// that does not converge returns converged = false and is discarded by
/// callers.
RootSet all_roots(std::span<const double> coeffs);

/// r* = n * min_w |w - zeta| over all roots (the origin root included).
double nearest_rescaled_distance(const RootSet& rs, cplx zeta);

/// Number of roots whose rescaled image n(w/zeta - 1) lies in the open
/// window.
int count_in_window(const RootSet& rs, cplx zeta, const Window& window);

}  // namespace holelab::rootfind
