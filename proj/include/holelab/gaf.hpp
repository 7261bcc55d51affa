#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "holelab/window.hpp"

namespace holelab::gaf {

using cplx = std::complex<double>;

inline constexpr int max_grid_points = 4096;

/// Counterclockwise closed discretization of the window boundary with
/// uniform arc spacing (points offset half a step so corners are avoided).
struct BoundaryGrid {
  std::vector<cplx> points;
  Window window;
};

BoundaryGrid make_boundary_grid(const Window& window, int m);

/// Default boundary resolution: phase tracking must keep up with the
/// perimeter, m = max(1024, 128 C).
int default_grid_size(double C);

/// Covariance of the limit field on the grid: entries F^(2rho)(z_i + conj z_j).
Eigen::MatrixXcd covariance(int rho, const BoundaryGrid& grid);

/// Cholesky factor of the boundary covariance with diagonal jitter
/// escalation: 1e-14 trace/m, then x10 up to 3 times on failure.
struct CholFactor {
  Eigen::MatrixXcd L;
  Eigen::VectorXd diag;  // covariance diagonal, for the rejection threshold
  BoundaryGrid grid;
  int rho = 0;
  int jitter_attempts = 0;
  double jitter = 0.0;
};

CholFactor cholesky_boundary(int rho, const BoundaryGrid& grid);

/// Winding estimate from boundary values: principal-branch phase
/// increments summed and rounded. Rejected when a value sits too close to
/// zero relative to its field scale or a single increment exceeds pi/2
/// (under-resolved boundary).
struct WindingResult {
  int winding = 0;
  bool rejected = false;
  double integer_residual = 0.0;  // |raw winding - rounded|
};

WindingResult phase_winding(std::span<const cplx> values,
                            std::span<const double> scale_sq);

struct GafSample {
  std::vector<cplx> values;
  WindingResult wind;
};

/// One field draw v = L xi (xi standard circular complex Gaussian from the
/// counter stream keyed by (seed, trial)) plus its winding count.
GafSample sample_and_wind(const CholFactor& chol, std::uint64_t seed,
                          std::uint64_t trial);

struct ZeroCountStats {
  int rho = 0;
  Window window;
  int m = 0;
  int trials = 0;
  int rejected = 0;
  std::map<int, int> histogram;  // winding -> frequency over accepted trials
  double mean = 0.0;
  double variance = 0.0;
  double p_zero = 0.0;
  double p_zero_lo = 0.0;  // Wilson 95%
  double p_zero_hi = 0.0;
  bool low_confidence = false;  // rejection rate > 5%

  double moment(int ell) const;  // E N^ell over accepted trials
};

ZeroCountStats zero_count_stats(int rho, const Window& window, int m, int trials,
                                std::uint64_t seed);

}  // namespace holelab::gaf
