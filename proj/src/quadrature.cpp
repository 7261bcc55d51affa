#include "holelab/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "holelab/gauss_legendre.hpp"
#include "holelab/kernel.hpp"

namespace holelab::quadrature {

namespace {

using kernel::cplx;

double rho1_at_x(int rho, double x) { return kernel::rho1(rho, cplx(x, 0.0)).value; }

}  // namespace

double default_D0(double C) { return std::min(std::log(C), C); }

void validate_window(int rho, const Window& window) {
  if (window.kind == Window::Kind::ball) {
    if (!(window.radius > 0.0))
      throw std::invalid_argument("window: ball radius must be positive");
    return;
  }
  if (!(window.delta > 0.0 && window.delta <= 0.5))
    throw std::invalid_argument("window: delta must lie in (0, 0.5]");
  if (!(window.C > 0.0))
    throw std::invalid_argument("window: C must be positive");
  // (V S - T^2)(u) must stay positive over the u-range the strip reaches.
  const GlRule& rule = gauss_legendre(33);
  for (double x : rule.x) {
    const double u = 2.0 * window.delta * x;
    const auto ks = kernel::kernel_scalars(rho, cplx(0.5 * u, 0.0));
    if (!(ks.V * ks.S - ks.T * ks.T > 0.0))
      throw std::invalid_argument(
          "window: V S - T^2 not positive on [-2 delta, 2 delta]; "
          "delta too large for this rho");
  }
}

double mean_count(int rho, const Window& window, int nodes) {
  validate_window(rho, window);
  if (window.kind == Window::Kind::strip) {
    const double line = gl_integrate(
        [&](double x) { return rho1_at_x(rho, x); }, -window.delta, window.delta,
        nodes);
    return 2.0 * window.C * line;
  }
  // Polar tensor rule over the disk; rho1 depends on Re z only.
  const GlRule& rule = gauss_legendre(nodes);
  const double r = window.radius;
  double sum = 0.0;
  for (int a = 0; a < nodes; ++a) {
    const double th = M_PI * (rule.x[a] + 1.0);  // [0, 2pi)
    const double wth = M_PI * rule.w[a];
    for (int b = 0; b < nodes; ++b) {
      const double s = 0.5 * r * (rule.x[b] + 1.0);  // [0, r]
      const double ws = 0.5 * r * rule.w[b];
      sum += wth * ws * s * rho1_at_x(rho, s * std::cos(th));
    }
  }
  return sum;
}

double defect_integral(
    int rho, const Window& strip, double D0,
    const std::function<double(double, double, double)>& defect, int nodes) {
  validate_window(rho, strip);
  if (strip.kind != Window::Kind::strip)
    throw std::invalid_argument("defect_integral: strip window required");
  if (!(D0 > 0.0 && D0 <= strip.C))
    throw std::invalid_argument("defect_integral: need 0 < D0 <= C");

  const GlRule& rule = gauss_legendre(nodes);
  const double d = strip.delta, C = strip.C;

  // Inner integral over dy in [0, 2C], split at D0, weight 2(2C - dy);
  // the defect depends on (x1, x2, y1 - y2) only and is even in dy.
  auto inner = [&](double x1, double x2) {
    double acc = 0.0;
    for (int seg = 0; seg < 2; ++seg) {
      const double lo = seg == 0 ? 0.0 : D0;
      const double hi = seg == 0 ? D0 : 2.0 * C;
      const double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
      for (int a = 0; a < nodes; ++a) {
        const double dy = mid + hw * rule.x[a];
        acc += hw * rule.w[a] * 2.0 * (2.0 * C - dy) * defect(x1, x2, dy);
      }
    }
    return acc;
  };

  double total = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double x1 = d * rule.x[i];
    for (int j = 0; j < nodes; ++j) {
      const double x2 = d * rule.x[j];
      total += d * rule.w[i] * d * rule.w[j] * inner(x1, x2);
    }
  }
  return total;
}

double defect_integral(int rho, const Window& strip, double D0, int nodes) {
  return defect_integral(
      rho, strip, D0,
      [rho](double x1, double x2, double dy) {
        return kernel::corr_defect(rho, cplx(x1, 0.0), cplx(x2, dy)).value;
      },
      nodes);
}

double factorial_moment(int rho, const Window& strip, double D0, int nodes) {
  const double mean = mean_count(rho, strip, nodes);
  return defect_integral(rho, strip, D0, nodes) + mean * mean;
}

IntensityReport variance_report(int rho, const Window& strip) {
  return variance_report(rho, strip, default_D0(strip.C));
}

IntensityReport variance_report(int rho, const Window& strip, double D0) {
  IntensityReport rep;
  rep.rho = rho;
  rep.window = strip;
  rep.split_D0 = D0;
  rep.mean_count = mean_count(rho, strip, 64);
  const double defect64 = defect_integral(rho, strip, D0, 64);
  const double defect32 = defect_integral(rho, strip, D0, 32);
  const double mean32 = mean_count(rho, strip, 32);
  rep.factorial_moment = defect64 + rep.mean_count * rep.mean_count;
  rep.variance = defect64 + rep.mean_count;  // = fm + mean - mean^2 exactly
  rep.ratio = rep.variance / (rep.mean_count * rep.mean_count);
  rep.quadrature_error_estimate =
      std::max(std::fabs(defect64 - defect32), std::fabs(rep.mean_count - mean32));
  rep.low_confidence = rep.quadrature_error_estimate >
                       0.05 * (std::fabs(rep.factorial_moment) + 1e-15);
  return rep;
}

double small_ball_mean(int rho, double c_radius, int nodes) {
  if (!(c_radius > 0.0 && c_radius <= 0.5))
    throw std::invalid_argument("small_ball_mean: need 0 < c <= 0.5");
  return mean_count(rho, Window::ball(c_radius), nodes);
}

}  // namespace holelab::quadrature
