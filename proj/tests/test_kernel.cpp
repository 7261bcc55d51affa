#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "holelab/kernel.hpp"
#include "holelab/rng.hpp"
#include "oracles.hpp"

using namespace holelab;
using kernel::cplx;

namespace {

double rel_err(cplx a, cplx b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Smallest eigenvalue of a Hermitian 2x2 matrix.
double min_eig(const kernel::Mat2& m) {
  const double tr = m.m11.real() + m.m22.real();
  const double det = m.det().real();
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  return 0.5 * (tr - disc);
}

}  // namespace

TEST_CASE("f_deriv closed-form values") {
  CHECK(std::abs(kernel::f_deriv(0, cplx(0.0)) - 1.0) < 1e-15);
  CHECK(std::abs(kernel::f_deriv(2, cplx(0.0)) - 1.0 / 3.0) < 1e-15);
  // F^(k)(0) = 1/(k+1) across the whole supported order range
  for (int k = 0; k <= kernel::k_order_cap; ++k)
    CHECK(std::abs(kernel::f_deriv(k, cplx(0.0)) - 1.0 / (k + 1)) <= 1e-15);
  CHECK(std::abs(kernel::f_deriv(0, cplx(1.0)) - (std::exp(1.0) - 1.0)) < 1e-12);
  // int_0^1 t e^t dt = 1 by parts
  CHECK(std::abs(kernel::f_deriv(1, cplx(1.0)) - 1.0) < 1e-12);
}

TEST_CASE("f_deriv argument guards") {
  CHECK_THROWS_AS(kernel::f_deriv(-1, cplx(0.0)), std::invalid_argument);
  CHECK_THROWS_AS(kernel::f_deriv(17, cplx(0.0)), std::invalid_argument);
  CHECK_THROWS_AS(kernel::f_deriv(0, cplx(701.0, 0.0)), std::domain_error);
  CHECK_NOTHROW(kernel::f_deriv(0, cplx(699.0, 0.0)));
}

TEST_CASE("f_deriv dual-path agreement across the switch") {
  // Both routes where the recurrence is stable; production evaluator
  // against the quadrature oracle on the remaining small-|u| pairs, so the
  // whole grid is covered by two independent routes at 1e-10.
  std::vector<double> moduli;
  for (double au = 0.5; au <= 3.01; au += 0.25) moduli.push_back(au);
  for (int k = 0; k <= 12; ++k) {
    for (double au : moduli) {
      for (int ph = 0; ph <= 8; ++ph) {
        const cplx u = std::polar(au, 2.0 * M_PI * ph / 8.0);
        if (au >= kernel::recurrence_floor(k)) {
          const cplx a = kernel::f_deriv_series(k, u);
          const cplx b = kernel::f_deriv_recurrence(k, u);
          CHECK(rel_err(a, b) <= 1e-10);
        } else {
          const cplx a = kernel::f_deriv(k, u);
          const cplx b = oracles::f_deriv_quadrature(k, u);
          CHECK(rel_err(a, b) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("f_deriv matches adaptive quadrature on a random grid, |u| <= 40") {
  int points = 0;
  for (std::uint64_t s = 0; points < 50; ++s) {
    const double au = 40.0 * rng::u01(rng::word(11, s, 0, 0));
    const double ph = 2.0 * M_PI * rng::u01(rng::word(11, s, 1, 0));
    const cplx u = std::polar(au, ph);
    const int k = static_cast<int>(rng::word(11, s, 2, 0) % 13);
    const cplx ref = oracles::f_deriv_quadrature(k, u);
    if (std::abs(ref) < 1e-6) continue;  // keep away from the zeros of F^(k)
    CHECK(rel_err(kernel::f_deriv(k, u), ref) <= 1e-9);
    ++points;
  }
}

TEST_CASE("kernel_scalars") {
  SUBCASE("u = 0 regardless of Im z") {
    const auto ks = kernel::kernel_scalars(0, cplx(0.0, 7.3));
    CHECK(ks.u == 0.0);
    CHECK(ks.S == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ks.T == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ks.V == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  }
  SUBCASE("rho = 1 at the origin") {
    const auto ks = kernel::kernel_scalars(1, cplx(0.0));
    CHECK(ks.S == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(ks.T == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(ks.V == doctest::Approx(0.2).epsilon(1e-15));
  }
  SUBCASE("S equals the quadrature oracle at u = 0.1") {
    const auto ks = kernel::kernel_scalars(0, cplx(0.05, 0.0));
    const cplx ref = oracles::f_deriv_quadrature(0, cplx(0.1, 0.0));
    CHECK(std::fabs(ks.S - ref.real()) <= 1e-12 * ref.real());
  }
}

TEST_CASE("rho1 closed forms and positivity") {
  CHECK(std::fabs(kernel::rho1(0, cplx(0.0)).value - 1.0 / (12.0 * M_PI)) < 1e-15);
  CHECK(std::fabs(kernel::rho1(1, cplx(0.0)).value - 3.0 / (80.0 * M_PI)) < 1e-15);
  // y-independence: u = 2 Re z only
  const double base = kernel::rho1(0, cplx(0.07, 0.0)).value;
  for (double y : {-40.0, -1.0, 0.3, 55.0})
    CHECK(kernel::rho1(0, cplx(0.07, y)).value == base);
  // positivity over |Re z| <= 1, i.e. u in [-2, 2], plus V S - T^2 > 0
  for (int rho : {0, 1, 2}) {
    for (double x = -1.0; x <= 1.0001; x += 0.05) {
      const auto ks = kernel::kernel_scalars(rho, cplx(x, 0.0));
      CHECK(ks.V * ks.S - ks.T * ks.T > 0.0);
      CHECK(kernel::rho1(rho, cplx(x, 0.0)).value > 0.0);
    }
  }
}

TEST_CASE("pair_matrices structure") {
  SUBCASE("coincident points give a rank-1 S") {
    const cplx z(0.03, -1.7);
    const auto p = kernel::pair_matrices(0, z, z);
    CHECK(p.S.m11 == p.S.m12);
    CHECK(p.S.m11 == p.S.m21);
    CHECK(p.S.m11 == p.S.m22);
    CHECK(p.S.det() == cplx(0.0));
  }
  SUBCASE("off-diagonal entry against the quadrature oracle") {
    const auto p = kernel::pair_matrices(0, cplx(0.0), cplx(0.0, M_PI));
    const cplx ref = oracles::f_deriv_quadrature(0, cplx(0.0, -M_PI));
    CHECK(rel_err(p.S.m12, ref) <= 1e-12);
    // closed form (e^{-i pi} - 1)/(-i pi) = -2i/pi
    CHECK(rel_err(p.S.m12, cplx(0.0, -2.0 / M_PI)) <= 1e-12);
  }
  SUBCASE("Hermitian symmetry of S and T for generic inputs") {
    const auto p = kernel::pair_matrices(1, cplx(0.04, 2.2), cplx(-0.01, -0.9));
    CHECK(p.S.m21 == std::conj(p.S.m12));
    CHECK(p.T.m21 == std::conj(p.T.m12));
    CHECK(p.V.m21 == std::conj(p.V.m12));
    CHECK(p.S.m11.imag() == 0.0);
    CHECK(p.S.m22.imag() == 0.0);
  }
  SUBCASE("det S nondegenerate away from the diagonal") {
    for (int rho : {0, 1}) {
      for (int i = 0; i < 40; ++i) {
        const double x1 = 0.1 * rng::u01(rng::word(7, i, 0, 0)) - 0.05;
        const double x2 = 0.1 * rng::u01(rng::word(7, i, 1, 0)) - 0.05;
        const double dy = 0.1 + 6.0 * rng::u01(rng::word(7, i, 2, 0));
        const auto p = kernel::pair_matrices(rho, cplx(x1, 0.0), cplx(x2, dy));
        CHECK(p.S.det().real() > 0.0);
        CHECK(min_eig(p.S) > 1e-6);
      }
    }
  }
}

TEST_CASE("rho2 continuity at the diagonal") {
  // rho2 vanishes quadratically at coincident points (zero repulsion), so
  // the stable diagonal quantity is rho2(z, z + t e^{i phi}) / t^2; its
  // variation between offsets 1e-4 and 1e-5 must be <= 1% from every
  // approach direction. Reference: 60-digit quadrature gives
  // rho2/t^2 -> 4.6907955e-6 at rho = 0, z = 0.
  CHECK(kernel::rho2(0, cplx(0.0), cplx(1e-4, 0.0)).value / 1e-8 ==
        doctest::Approx(4.6907955e-6).epsilon(1e-6));
  for (int rho : {0, 1}) {
    for (double x : {-0.08, 0.0, 0.08}) {
      for (double y : {-3.0, 0.0, 3.0}) {
        const cplx z(x, y);
        for (int d = 0; d < 8; ++d) {
          const cplx dir = std::polar(1.0, 2.0 * M_PI * d / 8.0);
          const double a = kernel::rho2(rho, z, z + 1e-4 * dir).value / 1e-8;
          const double b = kernel::rho2(rho, z, z + 1e-5 * dir).value / 1e-10;
          CHECK(std::fabs(a - b) <= 0.01 * std::fabs(b));
        }
      }
    }
  }
}

TEST_CASE("rho2 near-diagonal policy") {
  const cplx z(0.02, 1.0);
  CHECK_THROWS_AS(kernel::rho2(0, z, z + cplx(1e-8, 0.0),
                               kernel::NearDiagonalPolicy::signal_error),
                  kernel::NearDiagonalError);
  // continuity_limit evaluates at the fixed offset along the direction
  const double lim = kernel::rho2(0, z, z + cplx(1e-8, 0.0)).value;
  const double ref = kernel::rho2(0, z, z + cplx(1e-4, 0.0)).value;
  CHECK(lim == ref);
  // approach directions agree within 1%
  const double a0 = kernel::rho2(0, cplx(0.0), cplx(1e-3, 0.0)).value;
  const double a45 = kernel::rho2(0, cplx(0.0), std::polar(1e-3, M_PI / 4)).value;
  const double a90 = kernel::rho2(0, cplx(0.0), cplx(0.0, 1e-3)).value;
  CHECK(std::fabs(a45 - a0) <= 0.01 * std::fabs(a0));
  CHECK(std::fabs(a90 - a0) <= 0.01 * std::fabs(a0));
}

TEST_CASE("rho2 far separation approaches independence") {
  const double r2 = kernel::rho2(0, cplx(0.0), cplx(0.0, 20.0)).value;
  const double r1sq = kernel::rho1(0, cplx(0.0)).value *
                      kernel::rho1(0, cplx(0.0, 20.0)).value;
  CHECK(std::fabs(r2 - r1sq) <= 0.1 * r1sq);
}

TEST_CASE("corr_defect decay, symmetry, boundedness") {
  SUBCASE("|defect| * dy stays bounded as dy grows") {
    double bound = 0.0;
    for (double dy = 10.0; dy <= 100.0; dy += 2.5) {
      const double d =
          kernel::corr_defect(0, cplx(0.05, 0.0), cplx(-0.03, dy)).value;
      bound = std::max(bound, std::fabs(d) * dy);
    }
    CHECK(bound < 1.0);
    // and the defect itself has decayed
    CHECK(std::fabs(kernel::corr_defect(0, cplx(0.05, 0.0), cplx(-0.03, 100.0)).value) <
          1e-3);
  }
  SUBCASE("swap symmetry") {
    const cplx z1(0.04, 0.7), z2(-0.02, -1.3);
    for (int rho : {0, 1}) {
      const double a = kernel::corr_defect(rho, z1, z2).value;
      const double b = kernel::corr_defect(rho, z2, z1).value;
      CHECK(std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(a)));
    }
  }
  SUBCASE("bounded by a constant over the strip") {
    double m = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double x1 = 0.2 * rng::u01(rng::word(5, i, 0, 0)) - 0.1;
      const double x2 = 0.2 * rng::u01(rng::word(5, i, 1, 0)) - 0.1;
      const double y1 = 10.0 * rng::u01(rng::word(5, i, 2, 0)) - 5.0;
      const double y2 = 10.0 * rng::u01(rng::word(5, i, 3, 0)) - 5.0;
      m = std::max(m, std::fabs(
          kernel::corr_defect(0, cplx(x1, y1), cplx(x2, y2)).value));
    }
    CHECK(m < 10.0);
  }
}

TEST_CASE("rho2 depends only on (Re z1, Re z2, Im z1 - Im z2)") {
  for (int rho : {0, 1}) {
    const cplx z1(0.06, 0.4), z2(-0.08, -1.9);
    const double base = kernel::rho2(rho, z1, z2).value;
    for (double s : {-3.0, 0.7, 12.0}) {
      const cplx shift(0.0, s);
      const double moved = kernel::rho2(rho, z1 + shift, z2 + shift).value;
      CHECK(std::fabs(moved - base) <= 1e-12 * std::fabs(base));
    }
  }
}
