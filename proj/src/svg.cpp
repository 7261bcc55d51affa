#include "holelab/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace holelab::io {

namespace {

constexpr double k_view = 1.5;   // viewport [-1.5, 1.5]^2
constexpr int k_pixels = 900;

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << body;
  if (!out) throw std::runtime_error("write failed: " + path);
}

double to_px_x(double x) { return (x + k_view) / (2.0 * k_view) * k_pixels; }
double to_px_y(double y) { return (k_view - y) / (2.0 * k_view) * k_pixels; }

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

}  // namespace

std::string svg_scatter_string(std::span<const std::complex<double>> points) {
  std::string s;
  s.reserve(256 + 48 * points.size());
  s += fmt("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
           "height=\"%.0f\" viewBox=\"0 0 900 900\">\n",
           double(k_pixels), double(k_pixels));
  s += "<rect width=\"900\" height=\"900\" fill=\"white\"/>\n";
  // Unit circle overlay.
  s += fmt("<circle cx=\"%.1f\" cy=\"%.1f\" r=\"%.1f\" fill=\"none\" "
           "stroke=\"#999\" stroke-width=\"1\"/>\n",
           to_px_x(0.0), to_px_y(0.0), k_pixels / (2.0 * k_view));
  const double r_pt = std::clamp(
      6.0 / std::sqrt(std::max<std::size_t>(points.size(), 1)), 0.25, 3.0);
  for (const auto& p : points) {
    if (std::fabs(p.real()) > k_view || std::fabs(p.imag()) > k_view) continue;
    s += fmt("<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"#1f4e9c\"/>\n",
             to_px_x(p.real()), to_px_y(p.imag()), r_pt);
  }
  s += "</svg>\n";
  return s;
}

void emit_svg_scatter(std::span<const std::complex<double>> points,
                      const std::string& path) {
  write_file(path, svg_scatter_string(points));
}

std::string svg_cdf_string(std::span<const double> sorted_rstars,
                           const std::string& label) {
  const double xmax =
      sorted_rstars.empty() ? 1.0 : std::max(1.0, sorted_rstars.back());
  const double w = 720.0, h = 480.0, ml = 60.0, mb = 40.0;
  auto px = [&](double r) { return ml + r / xmax * (w - ml - 20.0); };
  auto py = [&](double p) { return (h - mb) - p * (h - mb - 20.0); };

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" "
                  "height=\"480\" viewBox=\"0 0 720 480\">\n"
                  "<rect width=\"720\" height=\"480\" fill=\"white\"/>\n";
  s += fmt("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"440.0\" "
           "stroke=\"black\"/>\n", ml, py(1.0), ml);
  s += fmt("<line x1=\"%.1f\" y1=\"440.0\" x2=\"%.1f\" y2=\"440.0\" "
           "stroke=\"black\"/>\n", ml, w - 20.0);
  s += "<polyline fill=\"none\" stroke=\"#b02a2a\" stroke-width=\"1.5\" points=\"";
  const std::size_t n = sorted_rstars.size();
  s += fmt("%.2f,%.2f ", px(0.0), py(0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double p0 = static_cast<double>(i) / n;
    const double p1 = static_cast<double>(i + 1) / n;
    s += fmt("%.2f,%.2f ", px(sorted_rstars[i]), py(p0));
    s += fmt("%.2f,%.2f ", px(sorted_rstars[i]), py(p1));
  }
  s += "\"/>\n";
  s += "<text x=\"70\" y=\"30\" font-family=\"sans-serif\" font-size=\"14\">";
  s += label;
  s += "</text>\n</svg>\n";
  return s;
}

void emit_svg_cdf(std::span<const double> sorted_rstars, const std::string& label,
                  const std::string& path) {
  write_file(path, svg_cdf_string(sorted_rstars, label));
}

}  // namespace holelab::io
