#include "holelab/kernel.hpp"

#include <array>
#include "holelab/detail/dd.hpp"
#include <cmath>

namespace holelab::kernel {

namespace {

void check_order(int k) {
  if (k < 0 || k > k_order_cap)
    throw std::invalid_argument("f_deriv: order k out of range [0, 16]");
}

void check_argument(cplx u) {
  if (!std::isfinite(u.real()) || !std::isfinite(u.imag()))
    throw std::domain_error("f_deriv: non-finite argument");
  if (u.real() > 700.0)
    throw std::domain_error("f_deriv: Re u > 700 overflows exp");
}

std::array<double, k_order_cap + 1> make_floors() {
  // Upward recurrence loses a factor k!/|u|^k of absolute accuracy; keep it
  // only where that factor is <= 1e4. floors[k] = (k!/1e4)^{1/k}.
  std::array<double, k_order_cap + 1> floors{};
  double log_fact = 0.0;
  for (int k = 1; k <= k_order_cap; ++k) {
    log_fact += std::log(static_cast<double>(k));
    const double f = std::exp((log_fact - std::log(1e4)) / k);
    floors[k] = f > 0.0 ? f : 0.0;
  }
  return floors;
}

const std::array<double, k_order_cap + 1> g_floors = make_floors();

}  // namespace

double recurrence_floor(int k) {
  check_order(k);
  return g_floors[static_cast<std::size_t>(k)];
}

cplx f_deriv_series(int k, cplx u) {
  check_order(k);
  check_argument(u);
  // F^(k)(u) = sum_m u^m / (m! (m+k+1)); successive term ratio
  // u/m * (m+k)/(m+k+1), so convergence is factorial in m.
  cplx term = 1.0 / static_cast<double>(k + 1);
  cplx sum = term;
  for (int m = 1; m < 600; ++m) {
    term *= u * (static_cast<double>(m + k) /
                 (static_cast<double>(m) * static_cast<double>(m + k + 1)));
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

cplx f_deriv_recurrence(int k, cplx u) {
  check_order(k);
  check_argument(u);
  const cplx eu = std::exp(u);
  cplx f = (eu - 1.0) / u;
  for (int j = 1; j <= k; ++j) f = (eu - static_cast<double>(j) * f) / u;
  return f;
}

cplx f_deriv(int k, cplx u, double u_switch) {
  check_order(k);
  check_argument(u);
  const double au = std::abs(u);
  if (au <= u_switch) return f_deriv_series(k, u);
  if (au < g_floors[static_cast<std::size_t>(k)]) return f_deriv_series(k, u);
  return f_deriv_recurrence(k, u);
}

KernelScalars kernel_scalars(int rho, cplx z) {
  if (rho < 0 || 2 * rho + 2 > k_order_cap)
    throw std::invalid_argument("kernel_scalars: rho out of range");
  const double u = 2.0 * z.real();
  // u is real, so the evaluator returns values with zero imaginary part.
  KernelScalars ks;
  ks.u = u;
  ks.rho = rho;
  ks.S = f_deriv(2 * rho, cplx(u, 0.0)).real();
  ks.T = f_deriv(2 * rho + 1, cplx(u, 0.0)).real();
  ks.V = f_deriv(2 * rho + 2, cplx(u, 0.0)).real();
  return ks;
}

IntensityValue rho1(int rho, cplx z) {
  const KernelScalars ks = kernel_scalars(rho, z);
  const double v = (ks.V * ks.S - ks.T * ks.T) / (M_PI * ks.S * ks.S);
  return {v, IntensityKind::one_point};
}

KernelPair pair_matrices(int rho, cplx z1, cplx z2) {
  if (rho < 0 || 2 * rho + 2 > k_order_cap)
    throw std::invalid_argument("pair_matrices: rho out of range");
  KernelPair p;
  p.z1 = z1;
  p.z2 = z2;
  p.rho = rho;
  const cplx u11 = z1 + std::conj(z1);
  const cplx u12 = z1 + std::conj(z2);
  const cplx u21 = z2 + std::conj(z1);
  const cplx u22 = z2 + std::conj(z2);
  const int k = 2 * rho;
  p.S = {f_deriv(k, u11), f_deriv(k, u12), f_deriv(k, u21), f_deriv(k, u22)};
  p.T = {f_deriv(k + 1, u11), f_deriv(k + 1, u12), f_deriv(k + 1, u21),
         f_deriv(k + 1, u22)};
  p.V = {f_deriv(k + 2, u11), f_deriv(k + 2, u12), f_deriv(k + 2, u21),
         f_deriv(k + 2, u22)};
  return p;
}

namespace {

using detail::dd;
using detail::ddc;

// F^(k)(u) by the power series in double-double arithmetic. Only needed
// for small |u| (the near-diagonal pair regime, where Im u nearly cancels),
// so convergence is fast.
ddc f_deriv_series_dd(int k, ddc u) {
  ddc pow_m{dd(1.0), dd(0.0)};  // u^m / m!
  ddc sum = detail::ddc_div_exact(pow_m, static_cast<double>(k + 1));
  for (int m = 1; m < 200; ++m) {
    pow_m = detail::ddc_div_exact(ddc_mul(pow_m, u), static_cast<double>(m));
    const ddc term =
        detail::ddc_div_exact(pow_m, static_cast<double>(m + k + 1));
    sum = ddc_add(sum, term);
    const double ta = std::fabs(term.re.hi) + std::fabs(term.im.hi);
    const double sa = std::fabs(sum.re.hi) + std::fabs(sum.im.hi);
    if (ta <= 1e-34 * sa) break;
  }
  return sum;
}

struct PairDd {
  ddc s11, s12, s21, s22;
  ddc t11, t12, t21, t22;
  ddc v11, v12, v21, v22;
};

// Pair matrices with double-double entries. The u_ij are assembled
// error-free from the coordinates, which keeps the Taylor coherence the
// near-diagonal cancellation depends on.
PairDd pair_matrices_dd(int rho, cplx z1, cplx z2) {
  auto make_u = [](double xa, double xb, double ya, double yb) {
    double s, e;
    detail::two_sum(xa, xb, s, e);
    dd re{s, e};
    detail::two_sum(ya, -yb, s, e);
    dd im{s, e};
    return ddc{re, im};
  };
  const ddc u11 = make_u(z1.real(), z1.real(), z1.imag(), z1.imag());
  const ddc u12 = make_u(z1.real(), z2.real(), z1.imag(), z2.imag());
  const ddc u21 = make_u(z2.real(), z1.real(), z2.imag(), z1.imag());
  const ddc u22 = make_u(z2.real(), z2.real(), z2.imag(), z2.imag());
  const int k = 2 * rho;
  PairDd p;
  p.s11 = f_deriv_series_dd(k, u11);
  p.s12 = f_deriv_series_dd(k, u12);
  p.s21 = f_deriv_series_dd(k, u21);
  p.s22 = f_deriv_series_dd(k, u22);
  p.t11 = f_deriv_series_dd(k + 1, u11);
  p.t12 = f_deriv_series_dd(k + 1, u12);
  p.t21 = f_deriv_series_dd(k + 1, u21);
  p.t22 = f_deriv_series_dd(k + 1, u22);
  p.v11 = f_deriv_series_dd(k + 2, u11);
  p.v12 = f_deriv_series_dd(k + 2, u12);
  p.v21 = f_deriv_series_dd(k + 2, u21);
  p.v22 = f_deriv_series_dd(k + 2, u22);
  return p;
}

PairDd pair_matrices_plain(int rho, cplx z1, cplx z2) {
  const KernelPair p = pair_matrices(rho, z1, z2);
  PairDd q;
  q.s11 = ddc(p.S.m11); q.s12 = ddc(p.S.m12); q.s21 = ddc(p.S.m21); q.s22 = ddc(p.S.m22);
  q.t11 = ddc(p.T.m11); q.t12 = ddc(p.T.m12); q.t21 = ddc(p.T.m21); q.t22 = ddc(p.T.m22);
  q.v11 = ddc(p.V.m11); q.v12 = ddc(p.V.m12); q.v21 = ddc(p.V.m21); q.v22 = ddc(p.V.m22);
  return q;
}

}  // namespace

IntensityValue rho2(int rho, cplx z1, cplx z2, NearDiagonalPolicy policy) {
  if (rho < 0 || 2 * rho + 2 > k_order_cap)
    throw std::invalid_argument("rho2: rho out of range");
  const cplx d = z2 - z1;
  double dist = std::abs(d);
  if (dist < near_diagonal_min) {
    if (policy == NearDiagonalPolicy::signal_error)
      throw NearDiagonalError("rho2: arguments within near-diagonal guard");
    // rho2 is continuous at the diagonal, so evaluate at a fixed offset
    // along the same approach direction.
    const cplx dir = dist == 0.0 ? cplx(1.0, 0.0) : d / dist;
    z2 = z1 + near_diagonal_eval_offset * dir;
    dist = near_diagonal_eval_offset;
  }

  // per(V - T S^{-1} T*) / det(S) evaluated as per(det*V - N) / det^3 with
  // N = T adj(S) T*. The numerator cancels three orders in |z1 - z2|^2,
  // so both the assembly and, near the diagonal, the kernel entries
  // themselves run in double-double arithmetic; with plain doubles the
  // entry rounding alone is fatal at offsets ~1e-5.
  const PairDd p = dist <= 1e-2 ? pair_matrices_dd(rho, z1, z2)
                                : pair_matrices_plain(rho, z1, z2);

  const ddc det_s = ddc_sub(ddc_mul(p.s11, p.s22), ddc_mul(p.s12, p.s21));

  // N_ij = sum_{k,l} T_ik adj(S)_kl conj(T_jl), adj(S) = (S22 -S12; -S21 S11)
  auto n_entry = [&](const ddc& ta1, const ddc& ta2, const ddc& tb1,
                     const ddc& tb2) {
    const ddc c1 = ddc_conj(tb1), c2 = ddc_conj(tb2);
    ddc acc = ddc_mul(ddc_mul(ta1, p.s22), c1);
    acc = ddc_sub(acc, ddc_mul(ddc_mul(ta2, p.s21), c1));
    acc = ddc_sub(acc, ddc_mul(ddc_mul(ta1, p.s12), c2));
    acc = ddc_add(acc, ddc_mul(ddc_mul(ta2, p.s11), c2));
    return acc;
  };
  const ddc n11 = n_entry(p.t11, p.t12, p.t11, p.t12);
  const ddc n12 = n_entry(p.t11, p.t12, p.t21, p.t22);
  const ddc n21 = n_entry(p.t21, p.t22, p.t11, p.t12);
  const ddc n22 = n_entry(p.t21, p.t22, p.t21, p.t22);

  const ddc y11 = ddc_sub(ddc_mul(det_s, p.v11), n11);
  const ddc y12 = ddc_sub(ddc_mul(det_s, p.v12), n12);
  const ddc y21 = ddc_sub(ddc_mul(det_s, p.v21), n21);
  const ddc y22 = ddc_sub(ddc_mul(det_s, p.v22), n22);

  const ddc per_y = ddc_add(ddc_mul(y11, y22), ddc_mul(y12, y21));
  const ddc det3 = ddc_mul(ddc_mul(det_s, det_s), det_s);

  const cplx val = per_y.value() / det3.value() / (M_PI * M_PI);
  if (std::fabs(val.imag()) > 1e-8 * std::abs(val))
    throw std::logic_error("rho2: imaginary residue exceeds tolerance");
  return {val.real(), IntensityKind::two_point};
}

IntensityValue corr_defect(int rho, cplx z1, cplx z2, NearDiagonalPolicy policy) {
  const double r2 = rho2(rho, z1, z2, policy).value;
  const double r11 = rho1(rho, z1).value;
  const double r12 = rho1(rho, z2).value;
  return {r2 - r11 * r12, IntensityKind::defect};
}

}  // namespace holelab::kernel
