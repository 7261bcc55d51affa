#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace holelab {

/// Observation region in rescaled coordinates z = n(w/zeta - 1):
/// either the strip (-delta, delta) x (-C, C) along the unit circle
/// or an open ball around the origin.
struct Window {
  enum class Kind { strip, ball };

  Kind kind = Kind::strip;
  double delta = 0.1;   // strip half-width (real direction)
  double C = 5.0;       // strip half-height (imaginary direction)
  double radius = 1.0;  // ball radius

  static Window strip(double delta, double C) {
    Window w;
    w.kind = Kind::strip;
    w.delta = delta;
    w.C = C;
    return w;
  }

  static Window ball(double radius) {
    Window w;
    w.kind = Kind::ball;
    w.radius = radius;
    return w;
  }

  // Open sets: boundary points excluded.
  bool contains(std::complex<double> z) const noexcept {
    if (kind == Kind::strip)
      return std::fabs(z.real()) < delta && std::fabs(z.imag()) < C;
    return std::norm(z) < radius * radius;
  }

  double area() const noexcept {
    if (kind == Kind::strip) return 4.0 * delta * C;
    return M_PI * radius * radius;
  }

  double perimeter() const noexcept {
    if (kind == Kind::strip) return 4.0 * delta + 4.0 * C;
    return 2.0 * M_PI * radius;
  }
};

}  // namespace holelab
