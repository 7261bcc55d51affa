#include "holelab/polynomial.hpp"

#include <cmath>
#include <stdexcept>

#include "holelab/rng.hpp"

namespace holelab::poly {

namespace {

constexpr double k_sqrt3 = 1.7320508075688772;

// Stream tags keep coefficient draws and weight perturbations disjoint.
constexpr std::uint64_t k_tag_xi = 0x78690000u;
constexpr std::uint64_t k_tag_weight = 0x77650000u;

}  // namespace

std::string dist_name(Dist d) {
  switch (d) {
    case Dist::rademacher: return "rademacher";
    case Dist::gaussian: return "gaussian";
    case Dist::uniform: return "uniform";
  }
  throw std::logic_error("dist_name: bad enum");
}

Dist dist_from_name(const std::string& name) {
  if (name == "rademacher") return Dist::rademacher;
  if (name == "gaussian") return Dist::gaussian;
  if (name == "uniform") return Dist::uniform;
  throw std::invalid_argument("unknown coefficient law: " + name);
}

void PolySpec::validate() const {
  if (rho < 0 || rho > 6)
    throw std::invalid_argument("PolySpec: rho must be in [0, 6]");
  if (n < std::max(4, rho + 1))
    throw std::invalid_argument("PolySpec: n must be >= max(4, rho+1)");
  if (n > 100000)
    throw std::invalid_argument("PolySpec: n must be <= 1e5");
  if (weight_mode.perturbed && !(weight_mode.eps_n >= 0.0))
    throw std::invalid_argument("PolySpec: perturbation bound must be >= 0");
}

std::vector<double> weights(int rho, int n, WeightMode mode) {
  if (n < rho) throw std::invalid_argument("weights: need n >= rho");
  if (rho < 0 || rho > 6 || n > 100000)
    throw std::invalid_argument("weights: rho in [0,6], n <= 1e5");
  std::vector<double> a(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    double w = 1.0;  // falling factorial, zero for i < rho
    for (int j = 0; j < rho; ++j) w *= static_cast<double>(i - j);
    if (mode.perturbed && w != 0.0) {
      const double u = rng::u01(rng::word(k_tag_weight, static_cast<std::uint64_t>(rho),
                                          static_cast<std::uint64_t>(n),
                                          static_cast<std::uint64_t>(i)));
      w *= 1.0 + mode.eps_n * (2.0 * u - 1.0);
    }
    a[static_cast<std::size_t>(i)] = w;
  }
  return a;
}

double draw_xi(Dist dist, std::uint64_t master_seed, std::uint64_t trial,
               std::uint64_t i) {
  switch (dist) {
    case Dist::rademacher:
      return (rng::word(master_seed ^ k_tag_xi, trial, i, 0) >> 63) ? 1.0 : -1.0;
    case Dist::gaussian:
      return rng::gaussian(master_seed ^ k_tag_xi, trial, i, 0);
    case Dist::uniform:
      return k_sqrt3 *
             (2.0 * rng::u01(rng::word(master_seed ^ k_tag_xi, trial, i, 0)) - 1.0);
  }
  throw std::logic_error("draw_xi: bad enum");
}

CoeffSample sample(const PolySpec& spec, std::uint64_t master_seed,
                   std::uint64_t trial_index) {
  spec.validate();
  CoeffSample s;
  s.spec = spec;
  s.master_seed = master_seed;
  s.trial_index = trial_index;
  const std::vector<double> a = weights(spec.rho, spec.n, spec.weight_mode);
  s.xis.resize(a.size());
  s.coeffs.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    s.xis[i] = draw_xi(spec.dist, master_seed, trial_index, i);
    s.coeffs[i] = a[i] * s.xis[i];
  }
  return s;
}

cplx eval(std::span<const double> coeffs, cplx z) {
  if (coeffs.empty()) throw std::invalid_argument("eval: empty coefficients");
  cplx acc = coeffs.back();
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

namespace {

// Knuth two-sum: s = fl(a + b), e the exact rounding error.
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bv = s - a;
  e = (a - (s - bv)) + (b - bv);
}

// Dekker split + two-prod: p = fl(a * b), e the exact rounding error.
inline void split(double a, double& hi, double& lo) {
  const double c = 134217729.0 * a;  // 2^27 + 1
  hi = c - (c - a);
  lo = a - hi;
}

inline void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  double ah, al, bh, bl;
  split(a, ah, al);
  split(b, bh, bl);
  e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
}

}  // namespace

EvalCertificate eval_compensated(std::span<const double> coeffs, cplx z) {
  if (coeffs.empty())
    throw std::invalid_argument("eval_compensated: empty coefficients");
  // Compensated Horner: every product and sum rounding error of the main
  // recursion is captured exactly and carried in a parallel error term,
  // so the returned value is accurate to ~1 ulp of the true f(z) plus a
  // second-order remainder.
  const double zr = z.real(), zi = z.imag();
  const double az = std::abs(z);
  double ar = coeffs.back(), ai = 0.0;
  cplx err = 0.0;
  double mag = std::fabs(coeffs.back());
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
    double p_rr, e_rr, p_ii, e_ii, p_ri, e_ri, p_ir, e_ir;
    two_prod(ar, zr, p_rr, e_rr);
    two_prod(ai, zi, p_ii, e_ii);
    two_prod(ar, zi, p_ri, e_ri);
    two_prod(ai, zr, p_ir, e_ir);
    double s_re, f_re, s_im, f_im;
    two_sum(p_rr, -p_ii, s_re, f_re);
    two_sum(p_ri, p_ir, s_im, f_im);
    double t_re, g_re;
    two_sum(s_re, coeffs[i], t_re, g_re);
    const cplx step_err(e_rr - e_ii + f_re + g_re, e_ri + e_ir + f_im);
    err = err * z + step_err;
    ar = t_re;
    ai = s_im;
    mag = mag * az + std::fabs(coeffs[i]);
  }
  return {cplx(ar, ai) + err, mag};
}

cplx eval_gn(std::span<const double> coeffs, int rho, cplx zeta, cplx z) {
  if (std::fabs(std::abs(zeta) - 1.0) > 1e-12)
    throw std::invalid_argument("eval_gn: zeta must have unit modulus");
  const auto n = static_cast<double>(coeffs.size() - 1);
  const cplx arg = zeta + zeta * z / n;
  return std::pow(n, -(rho + 0.5)) * eval(coeffs, arg);
}

cplx eval_gn(const CoeffSample& s, cplx zeta, cplx z) {
  return eval_gn(s.coeffs, s.spec.rho, zeta, z);
}

}  // namespace holelab::poly
