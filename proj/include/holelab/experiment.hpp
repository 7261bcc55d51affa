#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "holelab/polynomial.hpp"

namespace holelab::experiment {

using cplx = std::complex<double>;

/// Empirical distribution of rescaled nearest-root distances
/// r* = n |w - zeta| over converged trials. One sorted pass answers every
/// radius query: cdf(r) = P(at least one root within r/n of zeta).
struct HoleCurve {
  struct TrialRecord {
    std::uint64_t trial = 0;
    double rstar = 0.0;
    double residual_max = 0.0;
    bool discarded = false;
  };

  poly::PolySpec spec;
  cplx zeta;
  int trials = 0;  // requested trials, including discarded
  std::vector<double> rstars;  // sorted ascending, converged trials only
  std::vector<TrialRecord> records;  // one per trial, in trial order
  int discarded = 0;
  bool flagged = false;  // discarded > 1% of trials

  double cdf(double r) const;    // #{r* < r} / kept
  double median() const;
};

HoleCurve hole_scan(const poly::PolySpec& spec, cplx zeta, int trials,
                    std::uint64_t master_seed);

/// Same campaign evaluated at several zeta simultaneously; each returned
/// curve is identical to a standalone hole_scan with the same seed, but
/// the root sets are solved once per trial.
std::vector<HoleCurve> hole_scan_multi(const poly::PolySpec& spec,
                                       std::span<const cplx> zetas, int trials,
                                       std::uint64_t master_seed);

/// Sign-change probe of h_n(x) = n^{-1/2} f_{0,n}(1 + x/n) on the geometric
/// grid x_i = alpha^{i-1} (and mirrored), a lower-bound proxy for the
/// probability of a real root in [1 - C/n, 1 + C/n].
struct ProbeResult {
  double C = 0.0;
  double alpha = 0.0;
  int M = 0;  // one-sided grid size
  int trials = 0;
  double prob_sign_change = 0.0;
  double ci_lo = 0.0;  // Wilson 95%
  double ci_hi = 0.0;
};

ProbeResult real_root_probe(const poly::PolySpec& spec, double C, double alpha,
                            int trials, std::uint64_t master_seed);

/// True when some consecutive pair of values changes sign.
bool has_sign_change(std::span<const double> values);

/// Two-sample Kolmogorov-Smirnov statistic between sorted samples.
double ks_distance(std::span<const double> a_sorted,
                   std::span<const double> b_sorted);

/// Sup-distance between the hole curves of two specs that differ only in
/// the coefficient law. seed_b defaults to seed_a (shared randomness);
/// pass a different seed_b for null calibration.
double universality_compare(const poly::PolySpec& spec_a,
                            const poly::PolySpec& spec_b, cplx zeta, int trials,
                            std::uint64_t seed_a);
double universality_compare(const poly::PolySpec& spec_a,
                            const poly::PolySpec& spec_b, cplx zeta, int trials,
                            std::uint64_t seed_a, std::uint64_t seed_b);

/// Wilson score interval.
std::pair<double, double> wilson_ci(int successes, int trials, double z = 1.96);

}  // namespace holelab::experiment
