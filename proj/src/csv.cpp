#include "holelab/io/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace holelab::io {

namespace {

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << body;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string scan_csv_string(const experiment::HoleCurve& curve) {
  std::string s = "trial,rstar,residual_max,discarded_flag\n";
  for (const auto& rec : curve.records) {
    s += std::to_string(rec.trial);
    s += ',';
    if (!rec.discarded) s += num(rec.rstar);
    s += ',';
    if (!rec.discarded) s += num(rec.residual_max);
    s += ',';
    s += rec.discarded ? '1' : '0';
    s += '\n';
  }
  return s;
}

void write_scan_csv(const std::string& path, const experiment::HoleCurve& curve) {
  write_file(path, scan_csv_string(curve));
}

std::string roots_csv_string(std::span<const rootfind::RootSet> sets) {
  std::string s = "trial,re,im,residual\n";
  for (std::size_t t = 0; t < sets.size(); ++t) {
    const auto& rs = sets[t];
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
      s += std::to_string(t);
      s += ',';
      s += num(rs.roots[i].real());
      s += ',';
      s += num(rs.roots[i].imag());
      s += ',';
      s += num(rs.residuals[i]);
      s += '\n';
    }
  }
  return s;
}

void write_roots_csv(const std::string& path,
                     std::span<const rootfind::RootSet> sets) {
  write_file(path, roots_csv_string(sets));
}

std::string coeffs_csv_string(const poly::CoeffSample& sample) {
  const auto w = poly::weights(sample.spec.rho, sample.spec.n,
                               sample.spec.weight_mode);
  std::string s = "index,weight,xi,coeff\n";
  for (std::size_t i = 0; i < sample.coeffs.size(); ++i) {
    s += std::to_string(i);
    s += ',';
    s += num(w[i]);
    s += ',';
    s += num(sample.xis[i]);
    s += ',';
    s += num(sample.coeffs[i]);
    s += '\n';
  }
  return s;
}

void write_coeffs_csv(const std::string& path, const poly::CoeffSample& sample) {
  write_file(path, coeffs_csv_string(sample));
}

}  // namespace holelab::io
