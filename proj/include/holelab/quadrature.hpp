#pragma once

#include <functional>

#include "holelab/window.hpp"

namespace holelab::quadrature {

/// Aggregated zero-count moments of the limit field over a window.
/// variance = factorial_moment + mean_count - mean_count^2 (the exact
/// decomposition Var N = E N(N-1) + E N - (E N)^2, each piece testable).
struct IntensityReport {
  int rho = 0;
  Window window;
  double mean_count = 0.0;
  double factorial_moment = 0.0;  // E N(N-1)
  double variance = 0.0;
  double ratio = 0.0;  // variance / mean_count^2
  double split_D0 = 0.0;
  double quadrature_error_estimate = 0.0;
  bool low_confidence = false;
};

/// Default split between the diagonal-dominated and decaying regions of
/// the pair integral: min(log C, C).
double default_D0(double C);

/// Strip windows must have delta in (0, 0.5] and the positivity
/// (V S - T^2)(u) > 0 over u in [-2 delta, 2 delta]; throws otherwise.
void validate_window(int rho, const Window& window);

/// E N over the window: the strip case uses the y-independence of rho1
/// (2C times a 1-D integral), the ball case a polar tensor rule.
double mean_count(int rho, const Window& window, int nodes = 64);

/// Integral of a defect function over the strip pair region, reduced to
/// 3 dimensions: int dx1 dx2 int_0^{2C} 2 (2C - dy) defect(x1, x2, dy) d dy,
/// with the inner integral split at D0 (denser nodes inside). Exposed with
/// a pluggable integrand so tests can certify the reduction independently.
double defect_integral(
    int rho, const Window& strip, double D0,
    const std::function<double(double, double, double)>& defect, int nodes = 64);

/// Same, with the Kac-Rice correlation defect of the limit field.
double defect_integral(int rho, const Window& strip, double D0, int nodes = 64);

/// E N(N-1) over the strip: defect integral plus (E N)^2.
double factorial_moment(int rho, const Window& strip, double D0, int nodes = 64);

IntensityReport variance_report(int rho, const Window& strip);
IntensityReport variance_report(int rho, const Window& strip, double D0);

/// Ball-mode mean count at radius c (c <= 0.5), for the lower-bound check.
double small_ball_mean(int rho, double c_radius, int nodes = 64);

}  // namespace holelab::quadrature
