#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <cmath>
#include <complex>
#include <vector>

#include "holelab/polynomial.hpp"
#include "holelab/rootfind.hpp"
#include "oracles.hpp"

using namespace holelab;
using rootfind::cplx;

namespace {

double dist_to_set(cplx z, const std::vector<cplx>& set) {
  double best = 1e300;
  for (const cplx& w : set) best = std::min(best, std::abs(w - z));
  return best;
}

}  // namespace

TEST_CASE("roots of z^2 - 1") {
  const std::vector<double> c = {-1.0, 0.0, 1.0};
  const auto rs = rootfind::all_roots(c);
  REQUIRE(rs.converged);
  REQUIRE(rs.roots.size() == 2);
  std::vector<cplx> expect = {{1.0, 0.0}, {-1.0, 0.0}};
  for (const cplx& w : rs.roots) CHECK(dist_to_set(w, expect) < 1e-13);
}

TEST_CASE("all-ones degree 64: 65th roots of unity except 1") {
  std::vector<double> c(65, 1.0);
  const auto rs = rootfind::all_roots(c);
  REQUIRE(rs.converged);
  REQUIRE(rs.roots.size() == 64);
  for (const cplx& w : rs.roots) {
    CHECK(std::abs(std::pow(w, 65) - 1.0) < 1e-9);
    CHECK(std::abs(w - 1.0) > 0.05);
  }
  // each expected root hit exactly once
  for (int k = 1; k <= 64; ++k) {
    const cplx target = std::polar(1.0, 2.0 * M_PI * k / 65.0);
    CHECK(dist_to_set(target, rs.roots) < 1e-10);
  }
}

TEST_CASE("guards") {
  CHECK_THROWS_AS(rootfind::all_roots(std::vector<double>{1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(rootfind::all_roots(std::vector<double>{1.0, 2.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("rho-fold root at the origin is appended analytically") {
  poly::PolySpec spec;
  spec.rho = 2;
  spec.n = 40;
  spec.dist = poly::Dist::rademacher;
  const auto s = poly::sample(spec, 3, 0);
  const auto rs = rootfind::all_roots(s.coeffs);
  REQUIRE(rs.converged);
  CHECK(rs.roots.size() == 40);
  const int zeros = static_cast<int>(
      std::count(rs.roots.begin(), rs.roots.end(), cplx(0.0, 0.0)));
  CHECK(zeros == 2);
}

TEST_CASE("Rademacher n=1000: certified residuals") {
  poly::PolySpec spec;
  spec.rho = 0;
  spec.n = 1000;
  spec.dist = poly::Dist::rademacher;
  const auto s = poly::sample(spec, 12, 0);
  const auto rs = rootfind::all_roots(s.coeffs);
  REQUIRE(rs.converged);
  CHECK(rs.roots.size() == 1000);
  CHECK(rs.max_residual() <= 1e-10);
}

TEST_CASE("determinism: identical coefficients give identical root sets") {
  poly::PolySpec spec;
  spec.rho = 1;
  spec.n = 150;
  spec.dist = poly::Dist::gaussian;
  const auto s = poly::sample(spec, 4, 9);
  const auto a = rootfind::all_roots(s.coeffs);
  const auto b = rootfind::all_roots(s.coeffs);
  REQUIRE(a.roots.size() == b.roots.size());
  for (std::size_t i = 0; i < a.roots.size(); ++i) {
    CHECK(a.roots[i] == b.roots[i]);
    CHECK(a.residuals[i] == b.residuals[i]);
  }
}

TEST_CASE("conjugate closure for real coefficients") {
  for (std::uint64_t t = 0; t < 10; ++t) {
    poly::PolySpec spec;
    spec.rho = t % 2 ? 1 : 0;
    spec.n = 100;
    spec.dist = t % 3 ? poly::Dist::gaussian : poly::Dist::rademacher;
    const auto s = poly::sample(spec, 21, t);
    const auto rs = rootfind::all_roots(s.coeffs);
    REQUIRE(rs.converged);
    std::vector<cplx> conj;
    conj.reserve(rs.roots.size());
    for (const cplx& w : rs.roots) conj.push_back(std::conj(w));
    for (const cplx& w : rs.roots) CHECK(dist_to_set(w, conj) < 1e-9);
  }
}

TEST_CASE("exhaustiveness: coefficient reconstruction at degree 64") {
  poly::PolySpec spec;
  spec.rho = 0;
  spec.n = 64;
  spec.dist = poly::Dist::rademacher;
  const auto s = poly::sample(spec, 8, 1);
  const auto rs = rootfind::all_roots(s.coeffs);
  REQUIRE(rs.converged);
  // Expand leading * prod (z - w_i). Multiplication order matters: runs of
  // angle-adjacent roots build arc polynomials with ~1e14 coefficients, so
  // visit the angle-sorted roots with a coprime stride to keep every
  // partial product spread around the circle (intermediates stay O(1)).
  std::vector<std::size_t> idx(rs.roots.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::arg(rs.roots[a]) < std::arg(rs.roots[b]);
  });
  const std::size_t m = idx.size();
  std::vector<cplx> c = {cplx(s.coeffs.back())};
  for (std::size_t j = 0, p = 0; j < m; ++j, p = (p + 27) % m) {
    const cplx w = rs.roots[idx[p]];
    std::vector<cplx> next(c.size() + 1, cplx(0.0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= w * c[k];
    }
    c = std::move(next);
  }
  REQUIRE(c.size() == s.coeffs.size());
  double cmax = 0.0;
  for (double v : s.coeffs) cmax = std::max(cmax, std::fabs(v));
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(std::fabs(c[i].real() - s.coeffs[i]) <= 1e-8 * cmax);
    CHECK(std::fabs(c[i].imag()) <= 1e-8 * cmax);
  }
}

TEST_CASE("agreement with the small-degree deflation oracle") {
  for (std::uint64_t t = 0; t < 6; ++t) {
    poly::PolySpec spec;
    spec.rho = 0;
    spec.n = 24;
    spec.dist = poly::Dist::uniform;
    const auto s = poly::sample(spec, 55, t);
    const auto rs = rootfind::all_roots(s.coeffs);
    REQUIRE(rs.converged);
    const auto oracle = oracles::deflation_roots(s.coeffs);
    REQUIRE(oracle.size() == rs.roots.size());
    for (const cplx& w : rs.roots) CHECK(dist_to_set(w, oracle) < 1e-8);
  }
}

TEST_CASE("nearest_rescaled_distance") {
  SUBCASE("synthetic root at zeta(1 + (2+3i)/n)") {
    const int n = 13;
    const cplx zeta = std::polar(1.0, 0.9);
    rootfind::RootSet rs;
    rs.roots.assign(n, cplx(0.0, 0.0));
    rs.residuals.assign(n, 0.0);
    rs.converged = true;
    rs.roots[0] = zeta * (1.0 + cplx(2.0, 3.0) / static_cast<double>(n));
    const double r = rootfind::nearest_rescaled_distance(rs, zeta);
    CHECK(r == doctest::Approx(std::sqrt(13.0)).epsilon(1e-12));
  }
  SUBCASE("roots of unity approach 2 pi") {
    const int n = 2000;
    rootfind::RootSet rs;
    rs.converged = true;
    for (int k = 0; k < n; ++k)
      rs.roots.push_back(std::polar(1.0, 2.0 * M_PI * k / n));
    rs.residuals.assign(rs.roots.size(), 0.0);
    const double r = rootfind::nearest_rescaled_distance(rs, cplx(1.0, 0.0));
    CHECK(r == doctest::Approx(0.0).epsilon(1.0));  // the root at zeta itself
    // drop the root at 1: distance to the next one tends to 2 pi
    rs.roots.erase(rs.roots.begin());
    rs.residuals.pop_back();
    const double r2 = rootfind::nearest_rescaled_distance(rs, cplx(1.0, 0.0));
    CHECK(std::fabs(r2 * 2000.0 / 1999.0 - 2.0 * M_PI) < 1e-4);
  }
  SUBCASE("empty set") {
    rootfind::RootSet rs;
    CHECK_THROWS_AS(rootfind::nearest_rescaled_distance(rs, cplx(1.0, 0.0)),
                    std::invalid_argument);
  }
}

TEST_CASE("count_in_window") {
  poly::PolySpec spec;
  spec.rho = 0;
  spec.n = 400;
  spec.dist = poly::Dist::gaussian;
  const auto s = poly::sample(spec, 77, 2);
  const auto rs = rootfind::all_roots(s.coeffs);
  REQUIRE(rs.converged);
  const cplx zeta = std::polar(1.0, 2.2);

  SUBCASE("ball count positive iff nearest distance below radius") {
    const double rstar = rootfind::nearest_rescaled_distance(rs, zeta);
    for (double radius : {0.3, 1.0, 2.0, 4.0, 8.0}) {
      const int cnt =
          rootfind::count_in_window(rs, zeta, Window::ball(radius));
      CHECK((cnt > 0) == (rstar < radius));
    }
  }
  SUBCASE("whole plane recovers n") {
    const int cnt =
        rootfind::count_in_window(rs, zeta, Window::ball(1e9));
    CHECK(cnt == 400);
  }
  SUBCASE("strip misses roots far from zeta") {
    const int cnt = rootfind::count_in_window(
        rs, zeta, Window::strip(0.1, 0.05));
    CHECK(cnt <= 2);
  }
}

TEST_CASE("hole scan regression baseline") {
  // Frozen first-run median for Rademacher n=300, zeta = e^i, 400 trials.
  poly::PolySpec spec;
  spec.rho = 0;
  spec.n = 300;
  spec.dist = poly::Dist::rademacher;
  // exercised via rootfind only: sample + solve + distance
  std::vector<double> rstars;
  for (std::uint64_t t = 0; t < 400; ++t) {
    const auto s = poly::sample(spec, 20240613, t);
    const auto rs = rootfind::all_roots(s.coeffs);
    REQUIRE(rs.converged);
    rstars.push_back(
        rootfind::nearest_rescaled_distance(rs, std::polar(1.0, 1.0)));
  }
  std::sort(rstars.begin(), rstars.end());
  const double median = 0.5 * (rstars[199] + rstars[200]);
  CHECK(median == doctest::Approx(2.8772740748090744).epsilon(1e-9));
}
