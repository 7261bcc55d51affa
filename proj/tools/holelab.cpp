#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <complex>
#include <cstdio>
#include <iostream>

#include "holelab/experiment.hpp"
#include "holelab/gaf.hpp"
#include "holelab/io/csv.hpp"
#include "holelab/io/manifest.hpp"
#include "holelab/io/svg.hpp"
#include "holelab/kernel.hpp"
#include "holelab/parallel.hpp"
#include "holelab/polynomial.hpp"
#include "holelab/quadrature.hpp"
#include "holelab/rootfind.hpp"

namespace {

using json = nlohmann::json;
using holelab::Window;
using holelab::poly::PolySpec;
namespace expt = holelab::experiment;
namespace gaf = holelab::gaf;
namespace io = holelab::io;
namespace quad = holelab::quadrature;
namespace rf = holelab::rootfind;

std::complex<double> zeta_from_angle(double angle) {
  return {std::cos(angle), std::sin(angle)};
}

void emit(const json& j, const std::string& path) {
  if (path.empty())
    std::cout << j.dump(2) << '\n';
  else
    io::write_json(path, j);
}

int run_scan(const PolySpec& spec, double zeta_angle, int trials,
             std::uint64_t seed, const std::string& out,
             const std::string& plot, const std::string& manifest_path) {
  const auto curve =
      expt::hole_scan(spec, zeta_from_angle(zeta_angle), trials, seed);
  io::write_scan_csv(out, curve);
  if (!plot.empty()) io::emit_svg_cdf(curve.rstars, "empirical CDF of r*", plot);
  json params = {{"rho", spec.rho},
                 {"n", spec.n},
                 {"dist", holelab::poly::dist_name(spec.dist)},
                 {"zeta_angle", zeta_angle},
                 {"trials", trials},
                 {"seed", seed}};
  if (!manifest_path.empty())
    io::write_json(manifest_path, io::make_manifest("scan", params));
  std::fprintf(stderr, "scan: %zu kept, %d discarded -> %s\n",
               curve.rstars.size(), curve.discarded, out.c_str());
  return curve.flagged ? 1 : 0;
}

int run_roots(const PolySpec& spec, int trials, std::uint64_t seed,
              const std::string& svg, const std::string& csv) {
  std::vector<rf::RootSet> sets(static_cast<std::size_t>(trials));
  holelab::parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    sets[t] = rf::all_roots(holelab::poly::sample(spec, seed, t).coeffs);
  });
  std::vector<std::complex<double>> pts;
  bool any_failed = false;
  for (const auto& rs : sets) {
    if (!rs.converged) any_failed = true;
    pts.insert(pts.end(), rs.roots.begin(), rs.roots.end());
  }
  io::emit_svg_scatter(pts, svg);
  if (!csv.empty()) io::write_roots_csv(csv, sets);
  std::fprintf(stderr, "roots: %zu points -> %s\n", pts.size(), svg.c_str());
  return any_failed ? 1 : 0;
}

int run_intensity(int rho, double delta, double C, double D0,
                  const std::string& out) {
  const Window w = Window::strip(delta, C);
  const auto rep = D0 > 0.0 ? quad::variance_report(rho, w, D0)
                            : quad::variance_report(rho, w);
  json j = {{"schema_version", io::schema_version},
            {"rho", rep.rho},
            {"delta", delta},
            {"C", C},
            {"mean", rep.mean_count},
            {"factorial_moment", rep.factorial_moment},
            {"variance", rep.variance},
            {"ratio", rep.ratio},
            {"D0", rep.split_D0},
            {"err_estimate", rep.quadrature_error_estimate},
            {"low_confidence", rep.low_confidence}};
  emit(j, out);
  return rep.low_confidence ? 1 : 0;
}

int run_gaf(int rho, double delta, double C, int m, int trials,
            std::uint64_t seed, const std::string& out) {
  if (m <= 0) m = gaf::default_grid_size(C);
  const auto st =
      gaf::zero_count_stats(rho, Window::strip(delta, C), m, trials, seed);
  json counts = json::object();
  for (const auto& [k, freq] : st.histogram) counts[std::to_string(k)] = freq;
  json j = {{"schema_version", io::schema_version},
            {"C", C},
            {"delta", delta},
            {"rho", rho},
            {"m", m},
            {"trials", trials},
            {"rejected", st.rejected},
            {"counts", counts},
            {"mean", st.mean},
            {"var", st.variance},
            {"p_zero", st.p_zero},
            {"p_zero_ci", {st.p_zero_lo, st.p_zero_hi}},
            {"low_confidence", st.low_confidence}};
  emit(j, out);
  return st.low_confidence ? 1 : 0;
}

int run_probe(const PolySpec& spec, double C, double alpha, int trials,
              std::uint64_t seed, const std::string& out) {
  const auto pr = expt::real_root_probe(spec, C, alpha, trials, seed);
  json j = {{"schema_version", io::schema_version},
            {"rho", spec.rho},
            {"n", spec.n},
            {"dist", holelab::poly::dist_name(spec.dist)},
            {"C", pr.C},
            {"alpha", pr.alpha},
            {"M", pr.M},
            {"trials", pr.trials},
            {"prob_sign_change", pr.prob_sign_change},
            {"ci", {pr.ci_lo, pr.ci_hi}}};
  emit(j, out);
  return 0;
}

int run_universality(const PolySpec& spec_a, holelab::poly::Dist dist_b,
                     double zeta_angle, int trials, std::uint64_t seed,
                     const std::string& out) {
  PolySpec spec_b = spec_a;
  spec_b.dist = dist_b;
  const double d = expt::universality_compare(
      spec_a, spec_b, zeta_from_angle(zeta_angle), trials, seed);
  json j = {{"schema_version", io::schema_version},
            {"rho", spec_a.rho},
            {"n", spec_a.n},
            {"dist_a", holelab::poly::dist_name(spec_a.dist)},
            {"dist_b", holelab::poly::dist_name(dist_b)},
            {"zeta_angle", zeta_angle},
            {"trials", trials},
            {"seed", seed},
            {"ks_distance", d}};
  emit(j, out);
  return 0;
}

int run_selftest() {
  int failures = 0;
  auto check = [&](bool ok, const std::string& what) {
    std::printf("%s  %s\n", ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++failures;
  };
  using holelab::kernel::cplx;
  namespace kn = holelab::kernel;

  check(std::abs(kn::f_deriv(0, 0.0) - 1.0) < 1e-15, "F(0) = 1");
  check(std::abs(kn::f_deriv(2, 0.0) - 1.0 / 3.0) < 1e-15, "F''(0) = 1/3");
  check(std::abs(kn::f_deriv(0, 1.0) - (std::exp(1.0) - 1.0)) < 1e-12,
        "F(1) = e - 1");
  check(std::abs(kn::f_deriv(1, 1.0) - 1.0) < 1e-12, "F'(1) = 1");
  check(std::fabs(kn::rho1(0, 0.0).value - 1.0 / (12.0 * M_PI)) < 1e-14,
        "rho1(0) = 1/(12 pi) at rho=0");
  check(std::fabs(kn::rho1(1, 0.0).value - 3.0 / (80.0 * M_PI)) < 1e-14,
        "rho1(0) = 3/(80 pi) at rho=1");

  bool dual = true;
  for (int k = 0; k <= 12 && dual; ++k) {
    for (double au : {2.6, 3.0, 5.0, 9.0}) {
      if (au < kn::recurrence_floor(k)) continue;
      for (int ph = 0; ph < 8; ++ph) {
        const cplx u = std::polar(au, M_PI * ph / 4.0);
        const cplx a = kn::f_deriv_series(k, u);
        const cplx b = kn::f_deriv_recurrence(k, u);
        if (std::abs(a - b) > 1e-10 * std::abs(a)) dual = false;
      }
    }
  }
  check(dual, "series/recurrence dual-path agreement");

  const auto w = holelab::poly::weights(2, 4);
  check(w == std::vector<double>({0, 0, 2, 6, 12}), "falling-factorial weights");

  const std::vector<double> quad_poly = {-1.0, 0.0, 1.0};  // z^2 - 1
  const auto rs = rf::all_roots(quad_poly);
  check(rs.converged && rs.roots.size() == 2 &&
            std::min(std::abs(rs.roots[0] - 1.0), std::abs(rs.roots[0] + 1.0)) < 1e-12,
        "roots of z^2 - 1");

  std::vector<std::complex<double>> circle;
  for (int i = 0; i < 64; ++i)
    circle.push_back(std::polar(1.0, 2.0 * M_PI * i / 64.0));
  const auto wind = gaf::phase_winding(circle, {});
  check(!wind.rejected && wind.winding == 1, "winding of z along a circle");

  const auto ci = expt::wilson_ci(0, 100);
  check(ci.first == 0.0 && std::fabs(ci.second - 0.036995) < 1e-4,
        "wilson_ci(0, 100)");

  const double mean = quad::mean_count(0, Window::strip(0.1, 5.0));
  check(std::fabs(quad::mean_count(0, Window::strip(0.1, 10.0)) - 2.0 * mean) <
            1e-12 * mean,
        "mean count linear in C");

  std::printf("%s (%d failure%s)\n", failures == 0 ? "selftest OK" : "selftest FAILED",
              failures, failures == 1 ? "" : "s");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hole-radius laboratory for random Kac-type polynomials"};
  app.require_subcommand(1);

  PolySpec spec;
  std::string dist_name = "rademacher";
  double zeta_angle = 1.0;
  int trials = 2000;
  std::uint64_t seed = 42;
  double delta = 0.1, C = 5.0, D0 = 0.0, alpha = 1.5;
  int m = 0;
  std::string out, plot, csv, svg = "roots.svg", manifest, dist_b = "gaussian";

  auto add_spec = [&](CLI::App* cmd, bool with_dist = true) {
    cmd->add_option("--rho", spec.rho, "derivative order rho")->capture_default_str();
    cmd->add_option("--n", spec.n, "polynomial degree")->capture_default_str();
    if (with_dist)
      cmd->add_option("--dist", dist_name, "coefficient law: rademacher|gaussian|uniform")
          ->capture_default_str();
    cmd->add_option("--seed", seed, "master seed")->capture_default_str();
    cmd->add_option("--trials", trials, "number of trials")->capture_default_str();
  };

  auto* scan = app.add_subcommand("scan", "hole-radius scan: CSV of sorted r* plus CDF plot");
  add_spec(scan);
  scan->add_option("--zeta-angle", zeta_angle, "zeta = exp(i angle)")->capture_default_str();
  scan->add_option("--out", out, "output CSV path")->required();
  scan->add_option("--plot", plot, "optional CDF SVG path");
  scan->add_option("--manifest", manifest, "optional manifest JSON path");

  auto* roots = app.add_subcommand("roots", "sample polynomials and scatter their roots as SVG");
  add_spec(roots);
  roots->add_option("--svg", svg, "output SVG path")->capture_default_str();
  roots->add_option("--csv", csv, "optional roots CSV path");

  auto* intensity = app.add_subcommand("intensity", "Kac-Rice variance report over the strip");
  intensity->add_option("--rho", spec.rho)->capture_default_str();
  intensity->add_option("--delta", delta)->capture_default_str();
  intensity->add_option("--C", C)->capture_default_str();
  intensity->add_option("--D0", D0, "pair-integral split (default min(log C, C))");
  intensity->add_option("--out", out, "output JSON path (stdout if omitted)");

  auto* gafc = app.add_subcommand("gaf", "boundary-sampled zero counts of the limit field");
  gafc->add_option("--rho", spec.rho)->capture_default_str();
  gafc->add_option("--delta", delta)->capture_default_str();
  gafc->add_option("--C", C)->capture_default_str();
  gafc->add_option("--m", m, "boundary points (default max(1024, 128 C))");
  gafc->add_option("--trials", trials)->capture_default_str();
  gafc->add_option("--seed", seed)->capture_default_str();
  gafc->add_option("--out", out, "output JSON path (stdout if omitted)");

  auto* probe = app.add_subcommand("probe", "sign-change probe at zeta = 1");
  add_spec(probe);
  probe->add_option("--C", C)->capture_default_str();
  probe->add_option("--alpha", alpha, "geometric grid ratio")->capture_default_str();
  probe->add_option("--out", out, "output JSON path (stdout if omitted)");

  auto* uni = app.add_subcommand("universality", "KS distance between hole curves of two laws");
  add_spec(uni);
  uni->add_option("--dist-b", dist_b, "second coefficient law")->capture_default_str();
  uni->add_option("--zeta-angle", zeta_angle)->capture_default_str();
  uni->add_option("--out", out, "output JSON path (stdout if omitted)");

  app.add_subcommand("selftest", "run the fast invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints message and usage
    return code == 0 ? 0 : 2;
  }

  try {
    spec.dist = holelab::poly::dist_from_name(dist_name);
    if (scan->parsed()) return run_scan(spec, zeta_angle, trials, seed, out, plot, manifest);
    if (roots->parsed()) return run_roots(spec, trials, seed, svg, csv);
    if (intensity->parsed()) return run_intensity(spec.rho, delta, C, D0, out);
    if (gafc->parsed()) return run_gaf(spec.rho, delta, C, m, trials, seed, out);
    if (probe->parsed()) return run_probe(spec, C, alpha, trials, seed, out);
    if (uni->parsed())
      return run_universality(spec, holelab::poly::dist_from_name(dist_b),
                              zeta_angle, trials, seed, out);
    return run_selftest();
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
