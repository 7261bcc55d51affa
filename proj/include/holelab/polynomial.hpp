#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace holelab::poly {

using cplx = std::complex<double>;

/// Coefficient laws; all have mean 0 and variance 1.
enum class Dist { rademacher, gaussian, uniform };

std::string dist_name(Dist d);
Dist dist_from_name(const std::string& name);

/// exact: a_i = i(i-1)...(i-rho+1). perturbed: multiplied by (1 + eps_i)
/// with |eps_i| <= eps_n, deterministic; exists to probe robustness to the
/// asymptotically vanishing weight distortion.
struct WeightMode {
  bool perturbed = false;
  double eps_n = 0.0;

  static WeightMode exact() { return {}; }
  static WeightMode perturbed_by(double eps_n) { return {true, eps_n}; }
};

struct PolySpec {
  int rho = 0;
  int n = 1000;
  Dist dist = Dist::rademacher;
  WeightMode weight_mode{};

  void validate() const;
};

/// One sampled coefficient vector c_i = a_i * xi_i, reproducible from
/// (master_seed, trial_index).
struct CoeffSample {
  std::vector<double> coeffs;
  std::vector<double> xis;
  PolySpec spec;
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
};

/// Derivative weights a_{i,rho,n}, i = 0..n (empty product = 1 for rho=0).
std::vector<double> weights(int rho, int n, WeightMode mode = WeightMode::exact());

/// One xi draw from the counter-based stream keyed by (master_seed, trial, i).
double draw_xi(Dist dist, std::uint64_t master_seed, std::uint64_t trial,
               std::uint64_t i);

CoeffSample sample(const PolySpec& spec, std::uint64_t master_seed,
                   std::uint64_t trial_index);

/// Horner evaluation.
cplx eval(std::span<const double> coeffs, cplx z);

/// Compensated Horner: value with error compensation plus the coefficient
/// magnitude bound sum |c_i| |z|^i used for backward-error certificates.
struct EvalCertificate {
  cplx value;
  double magnitude_bound;
};

EvalCertificate eval_compensated(std::span<const double> coeffs, cplx z);

/// Rescaled evaluation g_n(z) = n^{-(rho+1/2)} f(zeta + zeta z / n).
/// Requires |zeta| = 1 within 1e-12.
cplx eval_gn(std::span<const double> coeffs, int rho, cplx zeta, cplx z);
cplx eval_gn(const CoeffSample& s, cplx zeta, cplx z);

}  // namespace holelab::poly
