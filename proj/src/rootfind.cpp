#include "holelab/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "holelab/polynomial.hpp"
#include "holelab/rng.hpp"

namespace holelab::rootfind {

namespace {

constexpr double k_correction_tol = 1e-14;

// Upper convex hull of (i, log|q_i|) over nonzero coefficients; returns the
// vertex indices. Standard Newton-polygon device for start radii.
std::vector<int> upper_hull(const std::vector<double>& logmag,
                            const std::vector<int>& idx) {
  std::vector<int> hull;
  for (int i : idx) {
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2];
      const int b = hull[hull.size() - 1];
      // Drop b if it lies below segment a->i.
      const double cross = (logmag[b] - logmag[a]) * (i - a) -
                           (logmag[i] - logmag[a]) * (b - a);
      if (cross <= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  return hull;
}

// Initial guesses on circles whose radii come from the Newton polygon of
// the coefficient magnitudes (Bini's rule). `phase` rotates the whole
// configuration; retries use a different phase.
void initial_guesses(std::span<const double> q, double phase,
                     std::vector<double>& re, std::vector<double>& im) {
  const int d = static_cast<int>(q.size()) - 1;
  std::vector<double> logmag(q.size(), 0.0);
  std::vector<int> nonzero;
  for (int i = 0; i <= d; ++i) {
    if (q[static_cast<std::size_t>(i)] != 0.0) {
      logmag[static_cast<std::size_t>(i)] =
          std::log(std::fabs(q[static_cast<std::size_t>(i)]));
      nonzero.push_back(i);
    }
  }
  const std::vector<int> hull = upper_hull(logmag, nonzero);
  int placed = 0;
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const int k1 = hull[e], k2 = hull[e + 1];
    const int m = k2 - k1;
    const double r = std::exp((logmag[static_cast<std::size_t>(k1)] -
                               logmag[static_cast<std::size_t>(k2)]) /
                              m);
    for (int s = 0; s < m; ++s) {
      const double th =
          2.0 * M_PI * (s + 0.5) / m + 2.0 * M_PI * k1 / d + phase;
      re[static_cast<std::size_t>(placed)] = r * std::cos(th);
      im[static_cast<std::size_t>(placed)] = r * std::sin(th);
      ++placed;
    }
  }
}

// p(z) and p'(z) by Horner with real coefficients, plus the magnitude
// bound sum |q_k| |z|^k (whose eps-multiple is the evaluation noise floor).
inline void horner2(std::span<const double> q, double zr, double zi,
                    double& pr, double& pi, double& dp_r, double& dp_i,
                    double& bound) {
  const int d = static_cast<int>(q.size()) - 1;
  const double az = std::sqrt(zr * zr + zi * zi);
  double br = q[static_cast<std::size_t>(d)], bi = 0.0;
  double cr = 0.0, ci = 0.0;
  double mg = std::fabs(q[static_cast<std::size_t>(d)]);
  for (int k = d - 1; k >= 0; --k) {
    // c = c*z + b; b = b*z + q_k
    const double ncr = cr * zr - ci * zi + br;
    const double nci = cr * zi + ci * zr + bi;
    const double nbr = br * zr - bi * zi + q[static_cast<std::size_t>(k)];
    const double nbi = br * zi + bi * zr;
    cr = ncr;
    ci = nci;
    br = nbr;
    bi = nbi;
    mg = mg * az + std::fabs(q[static_cast<std::size_t>(k)]);
  }
  pr = br;
  pi = bi;
  dp_r = cr;
  dp_i = ci;
  bound = mg;
}

// Newton data for one iterate. Kac-type polynomials of degree ~2000 have
// roots of modulus up to ~2, where |z|^d overflows; outside the unit
// circle everything is therefore evaluated through the reversed
// polynomial at y = 1/z, whose intermediates stay bounded:
//   p(z) = z^d q_rev(y),  p/p' = z q_rev / (d q_rev - y q_rev').
struct Evaluator {
  std::span<const double> q;
  std::vector<double> q_rev;
  int degree;
  double noise_scale;  // 4 sqrt(d) eps: Horner rounding is a ~2d-step walk

  explicit Evaluator(std::span<const double> coeffs)
      : q(coeffs),
        q_rev(coeffs.rbegin(), coeffs.rend()),
        degree(static_cast<int>(coeffs.size()) - 1),
        noise_scale(4.0 * std::sqrt(static_cast<double>(coeffs.size())) *
                    1.1e-16) {}

  struct NewtonData {
    cplx ratio;           // p / p'
    bool at_floor;        // |p| within evaluation noise of zero
    bool finite = true;
  };

  NewtonData newton(cplx z) const {
    NewtonData out;
    double pr, pi, dr, di, bound;
    if (std::norm(z) <= 1.0) {
      horner2(q, z.real(), z.imag(), pr, pi, dr, di, bound);
      if (!std::isfinite(pr) || !std::isfinite(pi) || !std::isfinite(dr) ||
          !std::isfinite(di)) {
        out.finite = false;
        return out;
      }
      out.at_floor = std::hypot(pr, pi) <= noise_scale * bound;
      out.ratio = cplx(pr, pi) / cplx(dr, di);
    } else {
      const cplx y = 1.0 / z;
      horner2(q_rev, y.real(), y.imag(), pr, pi, dr, di, bound);
      if (!std::isfinite(pr) || !std::isfinite(pi) || !std::isfinite(dr) ||
          !std::isfinite(di)) {
        out.finite = false;
        return out;
      }
      out.at_floor = std::hypot(pr, pi) <= noise_scale * bound;
      const cplx r(pr, pi), rd(dr, di);
      out.ratio = z * r / (static_cast<double>(degree) * r - y * rd);
    }
    if (!std::isfinite(out.ratio.real()) || !std::isfinite(out.ratio.imag()))
      out.finite = false;
    return out;
  }

  // Relative backward error |p(w)| / sum |q_k| |w|^k, via the reversed
  // polynomial when |w| > 1 (identical value, stable evaluation).
  double backward_error(cplx w) const {
    if (std::norm(w) <= 1.0) {
      const auto cert = poly::eval_compensated(q, w);
      return cert.magnitude_bound > 0.0
                 ? std::abs(cert.value) / cert.magnitude_bound
                 : 0.0;
    }
    const auto cert = poly::eval_compensated(q_rev, 1.0 / w);
    return cert.magnitude_bound > 0.0
               ? std::abs(cert.value) / cert.magnitude_bound
               : 0.0;
  }
};

struct AberthResult {
  bool converged = false;
  int sweeps = 0;
};

// Gauss-Seidel Aberth sweeps with per-root freezing. Roots stop updating
// when their correction reflects a converged Newton step or |p| reaches
// the evaluation noise floor; frozen roots keep repelling the rest.
AberthResult aberth(const Evaluator& ev, std::vector<double>& re,
                    std::vector<double>& im) {
  const std::size_t d = re.size();
  // Fujiwara bounds: every root modulus lies in [r_lo, r_hi]; iterates are
  // clamped into that annulus, where the Aberth correction is meaningful.
  const std::span<const double> q = ev.q;
  double hi_max = 0.0, lo_max = 0.0;
  const double log_qd = std::log(std::fabs(q.back()));
  const double log_q0 = std::log(std::fabs(q.front()));
  for (std::size_t k = 1; k <= d; ++k) {
    const double qk_top = std::fabs(q[d - k]);
    if (qk_top != 0.0)
      hi_max = std::max(hi_max, std::exp((std::log(qk_top) - log_qd) / k));
    const double qk_bot = std::fabs(q[k]);
    if (qk_bot != 0.0)
      lo_max = std::max(lo_max, std::exp((std::log(qk_bot) - log_q0) / k));
  }
  const double r_hi = 2.0 * hi_max;
  const double r_lo = 0.5 / lo_max;

  std::vector<char> done(d, 0);
  // Stall breaker: Aberth admits limit cycles (typically period two);
  // damp and rotate the step of a root whose correction stops shrinking.
  std::vector<double> last_corr(d, std::numeric_limits<double>::infinity());
  std::vector<int> stall(d, 0);
  AberthResult out;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    out.sweeps = sweep + 1;
    std::size_t active = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (done[i]) continue;
      ++active;
      double zr = re[i], zi = im[i];
      double az = std::sqrt(zr * zr + zi * zi);
      if (az > r_hi || (az < r_lo && az > 0.0)) {
        const double c = (az > r_hi ? r_hi : r_lo) / az;
        zr *= c;
        zi *= c;
        az = std::sqrt(zr * zr + zi * zi);
        re[i] = zr;
        im[i] = zi;
      }
      const auto nd = ev.newton(cplx(zr, zi));
      if (!nd.finite) {
        // Evaluation overflow; pull toward the unit scale until finite.
        re[i] = 0.85 * zr;
        im[i] = 0.85 * zi;
        continue;
      }
      if (nd.at_floor) {
        done[i] = 1;
        continue;
      }
      const double nr = nd.ratio.real();
      const double ni = nd.ratio.imag();
      // Repulsion sum_j 1/(z_i - z_j).
      double sr = 0.0, si = 0.0;
      const double* rr = re.data();
      const double* ii = im.data();
      for (std::size_t j = 0; j < d; ++j) {
        const double xr = zr - rr[j];
        const double xi = zi - ii[j];
        const double n2 = xr * xr + xi * xi;
        if (j == i || n2 == 0.0) continue;
        const double inv = 1.0 / n2;
        sr += xr * inv;
        si -= xi * inv;
      }
      // Aberth correction n / (1 - n * s).
      const double nsr = nr * sr - ni * si;
      const double nsi = nr * si + ni * sr;
      const double denr = 1.0 - nsr;
      const double deni = -nsi;
      const double dn = denr * denr + deni * deni;
      double wr, wi;
      if (dn == 0.0) {
        wr = nr;
        wi = ni;  // fall back to plain Newton
      } else {
        wr = (nr * denr + ni * deni) / dn;
        wi = (ni * denr - nr * deni) / dn;
      }
      double aw = std::sqrt(wr * wr + wi * wi);
      if (!std::isfinite(aw)) {
        re[i] = 0.85 * zr;
        im[i] = 0.85 * zi;
        continue;
      }
      // A near-singular Aberth denominator can fling the iterate far out;
      // keep steps local.
      const double cap = 0.5 * (1.0 + az);
      if (aw > cap) {
        wr *= cap / aw;
        wi *= cap / aw;
        aw = cap;
      }
      if (aw >= 0.8 * last_corr[i] && aw > 1e-10 * (1.0 + az))
        ++stall[i];
      else
        stall[i] = 0;
      last_corr[i] = aw;
      if (stall[i] >= 5) {
        const double u = rng::u01(
            rng::word(0x61626572u, i, static_cast<std::uint64_t>(sweep), 0));
        const double damp = 0.3 + 0.5 * u;
        const double ang = 1.2 * (u - 0.5);
        const double ca = std::cos(ang), sa = std::sin(ang);
        const double vr = damp * (wr * ca - wi * sa);
        const double vi = damp * (wr * sa + wi * ca);
        wr = vr;
        wi = vi;
        aw *= damp;
      }
      re[i] = zr - wr;
      im[i] = zi - wi;
      // Freeze on a small correction only when it reflects a small Newton
      // step; repulsion-dominated corrections (n*s large) are small for
      // coincident iterates sitting anywhere, roots or not.
      if (std::hypot(nsr, nsi) <= 0.5 &&
          aw <= k_correction_tol *
                    (1.0 + std::sqrt(re[i] * re[i] + im[i] * im[i])))
        done[i] = 1;
    }
    if (active == 0) {
      out.converged = true;
      return out;
    }
  }
  out.converged =
      std::all_of(done.begin(), done.end(), [](char c) { return c != 0; });
  return out;
}

void newton_polish(const Evaluator& ev, std::vector<double>& re,
                   std::vector<double>& im, int steps) {
  for (std::size_t i = 0; i < re.size(); ++i) {
    for (int s = 0; s < steps; ++s) {
      const auto nd = ev.newton(cplx(re[i], im[i]));
      if (!nd.finite) break;
      const double wr = nd.ratio.real();
      const double wi = nd.ratio.imag();
      // Newton is only trusted as a polisher near the root.
      if (wr * wr + wi * wi > 0.01 * (1.0 + re[i] * re[i] + im[i] * im[i]))
        break;
      re[i] -= wr;
      im[i] -= wi;
    }
  }
}

}  // namespace

double RootSet::max_residual() const {
  double m = 0.0;
  for (double r : residuals) m = std::max(m, r);
  return m;
}

RootSet all_roots(std::span<const double> coeffs) {
  if (coeffs.size() < 2)
    throw std::invalid_argument("all_roots: need degree >= 1");
  if (coeffs.back() == 0.0)
    throw std::invalid_argument("all_roots: leading coefficient is zero");

  // Factor z^rho analytically: multiple roots at the origin would degrade
  // the simultaneous iteration to linear convergence.
  std::size_t rho = 0;
  while (rho < coeffs.size() && coeffs[rho] == 0.0) ++rho;
  const std::span<const double> q = coeffs.subspan(rho);
  const std::size_t d = q.size() - 1;

  RootSet rs;
  if (d > 0) {
    const Evaluator ev(q);
    std::vector<double> re(d), im(d);
    AberthResult ar;
    for (int attempt = 0; attempt < 2; ++attempt) {
      initial_guesses(q, 0.7 + 1.2741 * attempt, re, im);
      ar = aberth(ev, re, im);
      rs.iterations += ar.sweeps;
      if (ar.converged) break;
    }
    newton_polish(ev, re, im, 2);
    rs.converged = ar.converged;
    rs.roots.reserve(d + rho);
    for (std::size_t i = 0; i < d; ++i) rs.roots.emplace_back(re[i], im[i]);
    rs.residuals.resize(d + rho, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      rs.residuals[i] = ev.backward_error(rs.roots[i]);
      if (!(rs.residuals[i] <= backward_error_tol)) rs.converged = false;
    }
  } else {
    rs.converged = true;
    rs.residuals.resize(rho, 0.0);
  }
  // The rho-fold root at the origin, with exact residual zero.
  for (std::size_t i = 0; i < rho; ++i) rs.roots.emplace_back(0.0, 0.0);
  return rs;
}

double nearest_rescaled_distance(const RootSet& rs, cplx zeta) {
  if (rs.roots.empty())
    throw std::invalid_argument("nearest_rescaled_distance: empty root set");
  if (std::fabs(std::abs(zeta) - 1.0) > 1e-12)
    throw std::invalid_argument("nearest_rescaled_distance: |zeta| != 1");
  double best = std::numeric_limits<double>::infinity();
  for (const cplx& w : rs.roots) best = std::min(best, std::abs(w - zeta));
  return static_cast<double>(rs.roots.size()) * best;
}

int count_in_window(const RootSet& rs, cplx zeta, const Window& window) {
  if (std::fabs(std::abs(zeta) - 1.0) > 1e-12)
    throw std::invalid_argument("count_in_window: |zeta| != 1");
  const auto n = static_cast<double>(rs.roots.size());
  const cplx conj_zeta = std::conj(zeta);
  int count = 0;
  for (const cplx& w : rs.roots)
    if (window.contains(n * (w * conj_zeta - 1.0))) ++count;
  return count;
}

}  // namespace holelab::rootfind
