#include "holelab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "holelab/parallel.hpp"
#include "holelab/rootfind.hpp"

namespace holelab::experiment {

double HoleCurve::cdf(double r) const {
  if (rstars.empty()) return 0.0;
  const auto it = std::lower_bound(rstars.begin(), rstars.end(), r);
  return static_cast<double>(it - rstars.begin()) /
         static_cast<double>(rstars.size());
}

double HoleCurve::median() const {
  if (rstars.empty())
    throw std::logic_error("HoleCurve::median: empty curve");
  const std::size_t k = rstars.size();
  return k % 2 == 1 ? rstars[k / 2]
                    : 0.5 * (rstars[k / 2 - 1] + rstars[k / 2]);
}

HoleCurve hole_scan(const poly::PolySpec& spec, cplx zeta, int trials,
                    std::uint64_t master_seed) {
  const cplx zs[1] = {zeta};
  return hole_scan_multi(spec, zs, trials, master_seed)[0];
}

std::vector<HoleCurve> hole_scan_multi(const poly::PolySpec& spec,
                                       std::span<const cplx> zetas, int trials,
                                       std::uint64_t master_seed) {
  spec.validate();
  if (trials <= 0) throw std::invalid_argument("hole_scan: trials must be > 0");
  if (zetas.empty()) throw std::invalid_argument("hole_scan: no zeta given");
  for (cplx z : zetas)
    if (std::fabs(std::abs(z) - 1.0) > 1e-12)
      throw std::invalid_argument("hole_scan: |zeta| != 1");

  const std::size_t nz = zetas.size();
  const auto tn = static_cast<std::size_t>(trials);
  std::vector<double> r(tn * nz, 0.0);
  std::vector<double> resid(tn, 0.0);
  std::vector<char> bad(tn, 0);

  parallel_for(tn, [&](std::size_t t) {
    const poly::CoeffSample s = poly::sample(spec, master_seed, t);
    const rootfind::RootSet rs = rootfind::all_roots(s.coeffs);
    if (!rs.converged) {
      bad[t] = 1;
      return;
    }
    resid[t] = rs.max_residual();
    for (std::size_t k = 0; k < nz; ++k)
      r[t * nz + k] = rootfind::nearest_rescaled_distance(rs, zetas[k]);
  });

  std::vector<HoleCurve> out(nz);
  for (std::size_t k = 0; k < nz; ++k) {
    HoleCurve& c = out[k];
    c.spec = spec;
    c.zeta = zetas[k];
    c.trials = trials;
    c.records.reserve(tn);
    for (std::size_t t = 0; t < tn; ++t) {
      HoleCurve::TrialRecord rec;
      rec.trial = t;
      rec.discarded = bad[t] != 0;
      if (!rec.discarded) {
        rec.rstar = r[t * nz + k];
        rec.residual_max = resid[t];
        c.rstars.push_back(rec.rstar);
      }
      c.records.push_back(rec);
    }
    c.discarded = trials - static_cast<int>(c.rstars.size());
    c.flagged = c.discarded > 0.01 * trials;
    std::sort(c.rstars.begin(), c.rstars.end());
  }
  return out;
}

bool has_sign_change(std::span<const double> values) {
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if ((values[i] < 0.0) != (values[i + 1] < 0.0)) return true;
    if (values[i] == 0.0 || values[i + 1] == 0.0) return true;
  }
  return false;
}

ProbeResult real_root_probe(const poly::PolySpec& spec, double C, double alpha,
                            int trials, std::uint64_t master_seed) {
  spec.validate();
  if (spec.rho != 0)
    throw std::invalid_argument("real_root_probe: implemented for rho = 0");
  if (!(alpha > 1.0)) throw std::invalid_argument("real_root_probe: alpha > 1");
  if (trials <= 0) throw std::invalid_argument("real_root_probe: trials > 0");
  if (!(C >= 1.0))
    throw std::invalid_argument("real_root_probe: grid empty, need C >= 1");

  const int M = static_cast<int>(std::floor(std::log(C) / std::log(alpha))) + 1;
  // Cumulative products so nested C values share bit-identical grid points.
  std::vector<double> pos(static_cast<std::size_t>(M));
  pos[0] = 1.0;
  for (int i = 1; i < M; ++i) pos[static_cast<std::size_t>(i)] =
      pos[static_cast<std::size_t>(i - 1)] * alpha;
  std::vector<double> grid;
  grid.reserve(2 * static_cast<std::size_t>(M));
  for (int i = M - 1; i >= 0; --i) grid.push_back(-pos[static_cast<std::size_t>(i)]);
  for (int i = 0; i < M; ++i) grid.push_back(pos[static_cast<std::size_t>(i)]);

  const auto tn = static_cast<std::size_t>(trials);
  std::vector<char> hit(tn, 0);
  parallel_for(tn, [&](std::size_t t) {
    const poly::CoeffSample s = poly::sample(spec, master_seed, t);
    std::vector<double> h(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
      h[i] = poly::eval_gn(s, cplx(1.0, 0.0), cplx(grid[i], 0.0)).real();
    hit[t] = has_sign_change(h) ? 1 : 0;
  });

  const int successes =
      static_cast<int>(std::count(hit.begin(), hit.end(), char(1)));
  ProbeResult pr;
  pr.C = C;
  pr.alpha = alpha;
  pr.M = M;
  pr.trials = trials;
  pr.prob_sign_change = static_cast<double>(successes) / trials;
  const auto ci = wilson_ci(successes, trials);
  pr.ci_lo = ci.first;
  pr.ci_hi = ci.second;
  return pr;
}

double ks_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_distance: empty sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }
  return d;
}

double universality_compare(const poly::PolySpec& a, const poly::PolySpec& b,
                            cplx zeta, int trials, std::uint64_t seed_a) {
  return universality_compare(a, b, zeta, trials, seed_a, seed_a);
}

double universality_compare(const poly::PolySpec& a, const poly::PolySpec& b,
                            cplx zeta, int trials, std::uint64_t seed_a,
                            std::uint64_t seed_b) {
  if (a.rho != b.rho || a.n != b.n || a.weight_mode.perturbed != b.weight_mode.perturbed ||
      a.weight_mode.eps_n != b.weight_mode.eps_n)
    throw std::invalid_argument(
        "universality_compare: specs must differ only in dist");
  const HoleCurve ca = hole_scan(a, zeta, trials, seed_a);
  const HoleCurve cb = hole_scan(b, zeta, trials, seed_b);
  return ks_distance(ca.rstars, cb.rstars);
}

std::pair<double, double> wilson_ci(int successes, int trials, double z) {
  if (trials <= 0) throw std::invalid_argument("wilson_ci: trials must be > 0");
  if (successes < 0 || successes > trials)
    throw std::invalid_argument("wilson_ci: successes out of range");
  const double n = trials;
  const double p = successes / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // The boundary cases collapse exactly; keep them free of rounding fuzz.
  const double lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

}  // namespace holelab::experiment
