#pragma once

#include <complex>
#include <stdexcept>

namespace holelab::kernel {

using cplx = std::complex<double>;

/// Highest derivative order supported (2*rho_max + 4 with rho_max = 6).
inline constexpr int k_order_cap = 16;

/// Regime boundary between the power series and the upward recurrence.
inline constexpr double default_u_switch = 1.5;

/// Near-diagonal guard for the two-point intensity.
inline constexpr double near_diagonal_min = 1e-6;
inline constexpr double near_diagonal_eval_offset = 1e-4;

/// Thrown by rho2 under NearDiagonalPolicy::signal_error.
struct NearDiagonalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// F^(k)(u) = int_0^1 t^k e^{tu} dt, the k-th derivative of
/// F(u) = (e^u - 1)/u.
///
/// Two evaluation regimes: the everywhere-convergent power series
/// sum_m u^m / (m! (m+k+1)) for small |u|, and the upward recurrence
/// F^(k) = (e^u - k F^(k-1))/u from F^(0) = (e^u - 1)/u for large |u|.
/// The recurrence amplifies absolute error by k!/|u|^k, so for k >= 1 the
/// series is kept in force up to the stability floor (see
/// recurrence_floor) even when |u| exceeds u_switch.
cplx f_deriv(int k, cplx u, double u_switch = default_u_switch);

/// The two raw evaluation routes, exposed for dual-path validation.
cplx f_deriv_series(int k, cplx u);
cplx f_deriv_recurrence(int k, cplx u);

/// Smallest |u| at which the upward recurrence to order k keeps roughly
/// eleven significant digits (k!/|u|^k <= 1e4). Zero for k <= 7.
double recurrence_floor(int k);

/// One-point kernel data at z: u = 2 Re z is real, so S, T, V are real
/// and strictly positive.
struct KernelScalars {
  double u;
  double S;  // F^(2rho)(u)
  double T;  // F^(2rho+1)(u)
  double V;  // F^(2rho+2)(u)
  int rho;
};

KernelScalars kernel_scalars(int rho, cplx z);

/// Closed-form 2x2 complex matrix (no general linear algebra needed).
struct Mat2 {
  cplx m11, m12, m21, m22;

  cplx det() const { return m11 * m22 - m12 * m21; }
  // Permanent of a 2x2 matrix.
  cplx per() const { return m11 * m22 + m12 * m21; }
  Mat2 adjugate() const { return {m22, -m12, -m21, m11}; }
  Mat2 conj_transpose() const {
    return {std::conj(m11), std::conj(m21), std::conj(m12), std::conj(m22)};
  }
  Mat2 operator*(const Mat2& o) const {
    return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
            m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
  }
  Mat2 operator-(const Mat2& o) const {
    return {m11 - o.m11, m12 - o.m12, m21 - o.m21, m22 - o.m22};
  }
  Mat2 scaled(cplx s) const { return {s * m11, s * m12, s * m21, s * m22}; }
};

/// Pair kernel data: entries of S, T, V at u_ij = z_i + conj(z_j).
struct KernelPair {
  cplx z1, z2;
  int rho;
  Mat2 S;  // E g(z_i) conj(g(z_j))
  Mat2 T;  // E g'(z_i) conj(g(z_j))
  Mat2 V;  // E g'(z_i) conj(g'(z_j))
};

KernelPair pair_matrices(int rho, cplx z1, cplx z2);

enum class IntensityKind { one_point, two_point, defect };

struct IntensityValue {
  double value;
  IntensityKind kind;
};

enum class NearDiagonalPolicy {
  signal_error,      // throw NearDiagonalError when |z1 - z2| < near_diagonal_min
  continuity_limit,  // evaluate at offset near_diagonal_eval_offset along the approach direction
};

/// One-point zero intensity rho1(z) = (V S - T^2) / (pi S^2).
IntensityValue rho1(int rho, cplx z);

/// Two-point zero intensity
/// rho2(z1, z2) = per(V - T S^{-1} T*) / (pi^2 det S).
/// The diagonal is a removable singularity; the default policy evaluates
/// nearly-diagonal pairs at a fixed small offset along the same direction.
IntensityValue rho2(int rho, cplx z1, cplx z2,
                    NearDiagonalPolicy policy = NearDiagonalPolicy::continuity_limit);

/// Correlation defect rho2(z1, z2) - rho1(z1) rho1(z2).
IntensityValue corr_defect(int rho, cplx z1, cplx z2,
                           NearDiagonalPolicy policy = NearDiagonalPolicy::continuity_limit);

}  // namespace holelab::kernel
