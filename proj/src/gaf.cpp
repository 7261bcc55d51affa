#include "holelab/gaf.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>

#include "holelab/experiment.hpp"
#include "holelab/kernel.hpp"
#include "holelab/parallel.hpp"
#include "holelab/rng.hpp"

namespace holelab::gaf {

namespace {

constexpr std::uint64_t k_tag_gaf = 0x67616600u;
constexpr double k_min_modulus_rel = 1e-8;

}  // namespace

int default_grid_size(double C) {
  return std::max(1024, static_cast<int>(std::ceil(128.0 * C)));
}

BoundaryGrid make_boundary_grid(const Window& window, int m) {
  if (m < 8) throw std::invalid_argument("make_boundary_grid: m too small");
  if (m > max_grid_points)
    throw std::invalid_argument("make_boundary_grid: m exceeds 4096");
  BoundaryGrid grid;
  grid.window = window;
  grid.points.reserve(static_cast<std::size_t>(m));
  if (window.kind == Window::Kind::ball) {
    for (int j = 0; j < m; ++j) {
      const double th = 2.0 * M_PI * (j + 0.5) / m;
      grid.points.emplace_back(window.radius * std::cos(th),
                               window.radius * std::sin(th));
    }
    return grid;
  }
  // Rectangle traversed counterclockwise starting on the right side.
  const double d = window.delta, C = window.C;
  const double per = window.perimeter();
  for (int j = 0; j < m; ++j) {
    double s = per * (j + 0.5) / m;
    if (s < 2.0 * C) {
      grid.points.emplace_back(d, -C + s);
      continue;
    }
    s -= 2.0 * C;
    if (s < 2.0 * d) {
      grid.points.emplace_back(d - s, C);
      continue;
    }
    s -= 2.0 * d;
    if (s < 2.0 * C) {
      grid.points.emplace_back(-d, C - s);
      continue;
    }
    s -= 2.0 * C;
    grid.points.emplace_back(-d + s, -C);
  }
  return grid;
}

Eigen::MatrixXcd covariance(int rho, const BoundaryGrid& grid) {
  const auto m = static_cast<Eigen::Index>(grid.points.size());
  Eigen::MatrixXcd sigma(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const cplx u = grid.points[static_cast<std::size_t>(i)] +
                     std::conj(grid.points[static_cast<std::size_t>(j)]);
      const cplx v = kernel::f_deriv(2 * rho, u);
      sigma(i, j) = v;
      sigma(j, i) = std::conj(v);
    }
  }
  return sigma;
}

CholFactor cholesky_boundary(int rho, const BoundaryGrid& grid) {
  CholFactor out;
  out.grid = grid;
  out.rho = rho;
  Eigen::MatrixXcd sigma = covariance(rho, grid);
  out.diag = sigma.diagonal().real();
  const auto m = sigma.rows();
  const double base = 1e-14 * sigma.trace().real() / static_cast<double>(m);
  double jitter = 0.0;
  for (int attempt = 0; attempt < 4; ++attempt) {
    Eigen::MatrixXcd a = sigma;
    if (jitter > 0.0) a.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXcd> llt(a);
    if (llt.info() == Eigen::Success) {
      out.L = llt.matrixL();
      out.jitter_attempts = attempt;
      out.jitter = jitter;
      return out;
    }
    jitter = jitter == 0.0 ? base : 10.0 * jitter;
  }
  throw std::runtime_error(
      "cholesky_boundary: factorization failed after jitter escalation "
      "(grid too fine for double precision)");
}

WindingResult phase_winding(std::span<const cplx> values,
                            std::span<const double> scale_sq) {
  WindingResult out;
  const std::size_t m = values.size();
  if (m < 3) {
    out.rejected = true;
    return out;
  }
  for (std::size_t i = 0; i < m; ++i) {
    const double floor2 =
        scale_sq.empty() ? 0.0
                         : k_min_modulus_rel * k_min_modulus_rel * scale_sq[i];
    if (std::norm(values[i]) <= floor2) {
      out.rejected = true;
      return out;
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const cplx a = values[i];
    const cplx b = values[(i + 1) % m];
    const double inc = std::arg(b * std::conj(a));
    if (std::fabs(inc) > M_PI / 2.0) {
      out.rejected = true;
      return out;
    }
    total += inc;
  }
  const double raw = total / (2.0 * M_PI);
  out.winding = static_cast<int>(std::lround(raw));
  out.integer_residual = std::fabs(raw - out.winding);
  return out;
}

GafSample sample_and_wind(const CholFactor& chol, std::uint64_t seed,
                          std::uint64_t trial) {
  const auto m = chol.L.rows();
  Eigen::VectorXcd xi(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double g0, g1;
    rng::gaussian_pair(seed ^ k_tag_gaf, trial, static_cast<std::uint64_t>(i), 0,
                       g0, g1);
    xi(i) = cplx(g0, g1) * M_SQRT1_2;  // E xi conj(xi) = 1, E xi xi = 0
  }
  Eigen::VectorXcd v = chol.L.triangularView<Eigen::Lower>() * xi;
  GafSample s;
  s.values.assign(v.data(), v.data() + m);
  s.wind = phase_winding(s.values,
                         std::span<const double>(chol.diag.data(),
                                                 static_cast<std::size_t>(m)));
  return s;
}

double ZeroCountStats::moment(int ell) const {
  const int accepted = trials - rejected;
  if (accepted <= 0) return 0.0;
  double sum = 0.0;
  for (const auto& [k, freq] : histogram)
    sum += std::pow(static_cast<double>(k), ell) * freq;
  return sum / accepted;
}

ZeroCountStats zero_count_stats(int rho, const Window& window, int m, int trials,
                                std::uint64_t seed) {
  if (trials <= 0) throw std::invalid_argument("zero_count_stats: trials <= 0");
  const BoundaryGrid grid = make_boundary_grid(window, m);
  const CholFactor chol = cholesky_boundary(rho, grid);

  std::vector<int> winding(static_cast<std::size_t>(trials), 0);
  std::vector<char> rejected(static_cast<std::size_t>(trials), 0);
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    const GafSample s = sample_and_wind(chol, seed, t);
    winding[t] = s.wind.winding;
    rejected[t] = s.wind.rejected ? 1 : 0;
  });

  ZeroCountStats st;
  st.rho = rho;
  st.window = window;
  st.m = m;
  st.trials = trials;
  double sum = 0.0, sum2 = 0.0;
  int zero = 0;
  for (int t = 0; t < trials; ++t) {
    if (rejected[static_cast<std::size_t>(t)]) {
      ++st.rejected;
      continue;
    }
    const int k = winding[static_cast<std::size_t>(t)];
    ++st.histogram[k];
    sum += k;
    sum2 += static_cast<double>(k) * k;
    if (k == 0) ++zero;
  }
  const int accepted = trials - st.rejected;
  if (accepted > 0) {
    st.mean = sum / accepted;
    st.variance = accepted > 1
                      ? (sum2 - sum * sum / accepted) / (accepted - 1)
                      : 0.0;
    st.p_zero = static_cast<double>(zero) / accepted;
    const auto ci = experiment::wilson_ci(zero, accepted);
    st.p_zero_lo = ci.first;
    st.p_zero_hi = ci.second;
  }
  st.low_confidence = st.rejected > 0.05 * trials;
  return st;
}

}  // namespace holelab::gaf
