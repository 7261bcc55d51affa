#pragma once

// Double-double helpers (Dekker / QD-style error-free transformations).
// Used where a formula cancels many orders of magnitude before producing
// its result, e.g. the two-point intensity near the diagonal.

#include <complex>

namespace holelab::detail {

inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bv = s - a;
  e = (a - (s - bv)) + (b - bv);
}

inline void quick_two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  e = b - (s - a);
}

inline void dekker_split(double a, double& hi, double& lo) {
  const double c = 134217729.0 * a;  // 2^27 + 1
  hi = c - (c - a);
  lo = a - hi;
}

inline void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  double ah, al, bh, bl;
  dekker_split(a, ah, al);
  dekker_split(b, bh, bl);
  e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
}

struct dd {
  double hi = 0.0;
  double lo = 0.0;

  dd() = default;
  dd(double h) : hi(h) {}
  dd(double h, double l) : hi(h), lo(l) {}

  double value() const { return hi + lo; }
};

inline dd dd_add(dd a, dd b) {
  double s, e;
  two_sum(a.hi, b.hi, s, e);
  e += a.lo + b.lo;
  double hi, lo;
  quick_two_sum(s, e, hi, lo);
  return {hi, lo};
}

inline dd dd_neg(dd a) { return {-a.hi, -a.lo}; }

inline dd dd_sub(dd a, dd b) { return dd_add(a, dd_neg(b)); }

inline dd dd_mul(dd a, dd b) {
  double p, e;
  two_prod(a.hi, b.hi, p, e);
  e += a.hi * b.lo + a.lo * b.hi;
  double hi, lo;
  quick_two_sum(p, e, hi, lo);
  return {hi, lo};
}

inline dd dd_prod(double a, double b) {
  double p, e;
  two_prod(a, b, p, e);
  return {p, e};
}

// Division by an exactly representable double (integers in practice).
inline dd dd_div_exact(dd a, double n) {
  const double q0 = a.hi / n;
  const dd p = dd_prod(q0, n);
  const dd r = dd_sub(a, p);
  const double q1 = (r.hi + r.lo) / n;
  double hi, lo;
  quick_two_sum(q0, q1, hi, lo);
  return {hi, lo};
}

struct ddc {
  dd re, im;

  ddc() = default;
  ddc(dd r, dd i) : re(r), im(i) {}
  ddc(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> value() const { return {re.value(), im.value()}; }
};

inline ddc ddc_add(ddc a, ddc b) {
  return {dd_add(a.re, b.re), dd_add(a.im, b.im)};
}

inline ddc ddc_sub(ddc a, ddc b) {
  return {dd_sub(a.re, b.re), dd_sub(a.im, b.im)};
}

inline ddc ddc_mul(ddc a, ddc b) {
  return {dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im)),
          dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re))};
}

inline ddc ddc_conj(ddc a) { return {a.re, dd_neg(a.im)}; }

inline ddc ddc_div_exact(ddc a, double n) {
  return {dd_div_exact(a.re, n), dd_div_exact(a.im, n)};
}

}  // namespace holelab::detail
