#pragma once

#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace holelab::io {

/// Root scatter in the complex plane: fixed viewport [-1.5, 1.5]^2, unit
/// circle overlay, point radius scaled by 1/sqrt(count). Deterministic
/// bytes (no timestamps, fixed formatting).
std::string svg_scatter_string(std::span<const std::complex<double>> points);
void emit_svg_scatter(std::span<const std::complex<double>> points,
                      const std::string& path);

/// Empirical CDF polyline (x = r*, y = probability), axes drawn.
std::string svg_cdf_string(std::span<const double> sorted_rstars,
                           const std::string& label);
void emit_svg_cdf(std::span<const double> sorted_rstars, const std::string& label,
                  const std::string& path);

}  // namespace holelab::io
