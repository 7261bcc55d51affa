#pragma once

#include <string>

#include "holelab/experiment.hpp"
#include "holelab/polynomial.hpp"
#include "holelab/rootfind.hpp"

namespace holelab::io {

// Column layouts are documented in docs/formats.md.

/// trial,rstar,residual_max,discarded_flag — rstar empty on discarded rows.
void write_scan_csv(const std::string& path, const experiment::HoleCurve& curve);
std::string scan_csv_string(const experiment::HoleCurve& curve);

/// trial,re,im,residual
void write_roots_csv(const std::string& path,
                     std::span<const rootfind::RootSet> sets);
std::string roots_csv_string(std::span<const rootfind::RootSet> sets);

/// index,weight,xi,coeff
void write_coeffs_csv(const std::string& path, const poly::CoeffSample& sample);
std::string coeffs_csv_string(const poly::CoeffSample& sample);

}  // namespace holelab::io
