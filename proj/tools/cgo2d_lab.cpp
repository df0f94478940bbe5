// cgo2d-lab: command-line driver for the disc laboratory.
//
// Subcommands: forward, dnmap, cgo, decay, reconstruct, sweep, check.
// Every run is driven by one JSON config (--config); outputs are CSV tables,
// JSON summaries and optional SVG log-log plots. All outputs are byte-stable
// for a fixed config: no timestamps, no locale, printf with %.17g throughout.

#include <cgo2d/cgo.hpp>
#include <cgo2d/experiments.hpp>
#include <cgo2d/fft.hpp>
#include <cgo2d/forward.hpp>
#include <cgo2d/norms.hpp>
#include <cgo2d/transforms.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

using namespace cgo2d;
using nlohmann::json;

namespace {

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

Config load_config(const std::string& path) {
  if (path.empty()) return Config{};
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  in >> j;
  return config_from_json(j);
}

void write_text(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::fwrite(body.data(), 1, body.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << body;
}

void write_json(const std::string& path, const json& j) {
  if (!path.empty()) write_text(path, j.dump(2) + "\n");
}

// Minimal log-log SVG: one polyline per series over a framed plot area.
std::string svg_loglog(const std::string& title,
                       const std::vector<std::pair<std::string, const DecayReport*>>& series) {
  const int W = 520, H = 390, ml = 60, mr = 20, mt = 40, mb = 50;
  double lx0 = std::numeric_limits<double>::max(), lx1 = -lx0, ly0 = lx0, ly1 = -lx0;
  for (const auto& [name, rep] : series)
    for (std::size_t i = 0; i < rep->ns.size(); ++i) {
      lx0 = std::min(lx0, std::log10(rep->ns[i]));
      lx1 = std::max(lx1, std::log10(rep->ns[i]));
      ly0 = std::min(ly0, std::log10(rep->values[i]));
      ly1 = std::max(ly1, std::log10(rep->values[i]));
    }
  if (lx1 - lx0 < 1e-12) lx1 = lx0 + 1;
  if (ly1 - ly0 < 1e-12) ly1 = ly0 + 1;
  auto px = [&](double lx) { return ml + (lx - lx0) / (lx1 - lx0) * (W - ml - mr); };
  auto py = [&](double ly) { return H - mb - (ly - ly0) / (ly1 - ly0) * (H - mt - mb); };

  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  std::string s = fmt(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
      "viewBox=\"0 0 %d %d\">\n<rect width=\"%d\" height=\"%d\" fill=\"white\"/>\n",
      W, H, W, H, W, H);
  s += fmt("<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"none\" "
           "stroke=\"#444\"/>\n",
           ml, mt, W - ml - mr, H - mt - mb);
  s += fmt("<text x=\"%d\" y=\"24\" font-family=\"monospace\" font-size=\"14\">%s</text>\n",
           ml, title.c_str());
  s += fmt("<text x=\"%d\" y=\"%d\" font-family=\"monospace\" font-size=\"11\">log10 n: "
           "%.2f .. %.2f</text>\n",
           ml, H - 16, lx0, lx1);
  s += fmt("<text x=\"8\" y=\"%d\" font-family=\"monospace\" font-size=\"11\" "
           "transform=\"rotate(-90 8 %d)\">log10 value: %.2f .. %.2f</text>\n",
           H - mb, H - mb, ly0, ly1);
  int ci = 0;
  for (const auto& [name, rep] : series) {
    std::string pts;
    for (std::size_t i = 0; i < rep->ns.size(); ++i)
      pts += fmt("%.2f,%.2f ", px(std::log10(rep->ns[i])), py(std::log10(rep->values[i])));
    s += fmt("<polyline points=\"%s\" fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\"/>\n",
             pts.c_str(), colors[ci % 4]);
    for (std::size_t i = 0; i < rep->ns.size(); ++i)
      s += fmt("<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" fill=\"%s\"/>\n",
               px(std::log10(rep->ns[i])), py(std::log10(rep->values[i])), colors[ci % 4]);
    s += fmt("<text x=\"%d\" y=\"%d\" font-family=\"monospace\" font-size=\"11\" "
             "fill=\"%s\">%s slope=%.4f</text>\n",
             ml + 8, mt + 16 + 14 * ci, colors[ci % 4], name.c_str(), rep->slope);
    ++ci;
  }
  s += "</svg>\n";
  return s;
}

json report_json(const DecayReport& r) {
  return json{{"label", r.label},     {"ns", r.ns},       {"values", r.values},
              {"slope", r.slope},     {"intercept", r.intercept},
              {"target", r.target},   {"slack", r.slack}, {"pass", r.pass}};
}

struct CheckList {
  json results = json::array();
  bool all_pass = true;

  void add(const std::string& name, bool pass, const std::string& detail) {
    results.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
    all_pass = all_pass && pass;
    std::printf("[%s] %s: %s\n", pass ? "ok" : "FAIL", name.c_str(), detail.c_str());
  }
};

// Fast invariant battery behind `cgo2d-lab check`.
int run_check(const Config& cfg, const std::string& json_path) {
  const DiscGrid g = build_grid(cfg.N, cfg.L);
  const CauchyOp op(g);
  const SpaceParams sp = choose_parameters(cfg.epsilon, cfg.a);
  CheckList checks;

  {  // Cauchy transform inverts dbar; direct kernel oracle at N=32.
    Field f(g.N, g.N);
    for (int j = 0; j < g.N; ++j)
      for (int i = 0; i < g.N; ++i) f(i, j) = std::exp(-std::norm(g.Z(i, j)) / 0.25);
    const Field d = dbar(g, op.apply(f));
    const Mask inner = interior_mask(g, 2);
    double num = 0, den = 0;
    for (int j = 0; j < g.N; ++j)
      for (int i = 0; i < g.N; ++i)
        if (inner(i, j)) {
          num += std::norm(d(i, j) - f(i, j));
          den += std::norm(f(i, j));
        }
    const double rel = std::sqrt(num / den);
    checks.add("cauchy-inverts-dbar", rel < 0.05, fmt("interior rel=%.2e", rel));

    const DiscGrid g32 = build_grid(32, cfg.L);
    const CauchyOp op32(g32);
    Field h = Field::Zero(32, 32);
    for (int j = 0; j < 32; ++j)
      for (int i = 0; i < 32; ++i)
        if (g32.mask(i, j)) h(i, j) = cplx(std::sin(0.3 * i), std::cos(0.2 * j));
    Field direct = Field::Zero(32, 32);
    for (int j = 0; j < 32; ++j)
      for (int i = 0; i < 32; ++i) {
        cplx acc = 0.0;
        for (int l = 0; l < 32; ++l)
          for (int k = 0; k < 32; ++k) {
            const cplx dz = g32.Z(i, j) - g32.Z(k, l);
            if (dz != cplx(0.0)) acc += h(k, l) / dz;
          }
        direct(i, j) = acc * g32.cell_area / std::numbers::pi;
      }
    const double worst = (op32.apply(h) - direct).abs().maxCoeff();
    checks.add("cauchy-direct-oracle", worst < 1e-10, fmt("N=32 max diff=%.2e", worst));
  }

  {  // Oscillatory smoothing against the separable Gaussian closed form.
    const double sig = 0.35, n = 16.0;
    Field Q(g.N, g.N);
    for (int j = 0; j < g.N; ++j)
      for (int i = 0; i < g.N; ++i) Q(i, j) = std::exp(-std::norm(g.Z(i, j)) / (sig * sig));
    auto gauss1d = [&](double coef, double cen) {
      const cplx a(1.0 / (sig * sig), -coef);
      const cplx b(0.0, 2.0 * coef * cen);
      return std::sqrt(std::numbers::pi / a) *
             std::exp(b * b / (4.0 * a) + cplx(0.0, coef * cen * cen));
    };
    const Field S = stationary_phase(g, Q, n);
    double worst = 0.0;
    for (int idx = 0; idx < 5; ++idx) {
      const int i = 96 + 17 * idx, j = 110 + 9 * idx;
      const cplx want =
          (2.0 * n / std::numbers::pi) * gauss1d(2 * n, g.coords[i]) * gauss1d(-2 * n, g.coords[j]);
      worst = std::max(worst, std::abs(S(i, j) - want));
    }
    checks.add("stationary-phase-gaussian", worst < 1e-10, fmt("closed form diff=%.2e", worst));
  }

  {  // Gaussian-Holder bound.
    bool ok = true;
    std::string detail;
    for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
      const double sup = gaussian_holder_sup(alpha, 100000);
      const double bound = std::pow(2.0, 1.0 + alpha / 2.0);
      ok = ok && sup <= bound + 1e-9;
      detail += fmt("%.4f<=%.4f ", sup, bound);
    }
    checks.add("gaussian-holder-bound", ok, detail);
  }

  {  // Lorentz indicator identity and Hardy bracket.
    const Field ones = Field::Ones(g.N, g.N);
    const double got = lorentz_norm(g, ones, 2.0, 1.0);
    const double want = 2.0 * std::sqrt(disc_measure(g));
    checks.add("lorentz-indicator", std::abs(got - want) < 1e-10 * want,
               fmt("L(2,1)=%.6f vs 2*sqrt(area)=%.6f", got, want));
  }

  {  // Trivial fixed point and phase reflection.
    const CGOSolution s0 = bukhgeim_solve(g, op, Field::Zero(g.N, g.N), 8.0, cplx(0.1, -0.05),
                                          Orientation::holomorphic, cfg.fixed_point_tol);
    double worst = 0.0;
    for (int j = 0; j < g.N; ++j)
      for (int i = 0; i < g.N; ++i)
        if (g.mask(i, j)) worst = std::max(worst, std::abs(s0.f(i, j) - 1.0));
    checks.add("bukhgeim-trivial", s0.converged && worst < 1e-14, fmt("sup|f-1|=%.1e", worst));
  }

  {  // Cutoff contract: annulus transition and support bound.
    const CutoffField cf = build_cutoff(g, 0.2, cplx(0.1, -0.05));
    double supp = 0.0;
    for (int j = 0; j < g.N; ++j)
      for (int i = 0; i < g.N; ++i)
        if (g.mask(i, j) && std::abs(1.0 - cf.h(i, j)) > 0.0) supp += g.cell_area;
    const double bound = std::numbers::pi * (0.04 + 4 * 0.2 * g.h);
    checks.add("cutoff-support", supp <= bound, fmt("supp=%.4f <= %.4f", supp, bound));
  }

  {  // Parameter recipes and the poly-log comparison.
    bool ok = std::abs(sp.r - sp.theta / 4.0) < 1e-15 &&
              std::abs(1.0 / sp.p_star - 0.5 - 1.0 / sp.p) < 1e-12;
    double worst = 0.0;
    ok = ok && poly_log_check(1.0, 0.5) && !poly_log_check(0.1, 1.0, &worst);
    ok = ok && std::abs(std::log(worst) + 10.0) < 0.5;
    checks.add("parameters-and-polylog", ok, fmt("counterexample x=%.3e", worst));
  }

  write_json(json_path, json{{"command", "check"},
                             {"config", config_to_json(cfg)},
                             {"checks", checks.results},
                             {"pass", checks.all_pass}});
  std::printf("check: %s\n", checks.all_pass ? "all passed" : "FAILURES");
  return checks.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cgo2d-lab: CGO / DN-map laboratory on the unit disc"};
  app.require_subcommand(1);

  std::string config_path, out_path, json_path, svg_path;
  app.add_option("--config", config_path, "JSON config file (defaults used when absent)");

  auto add_io = [&](CLI::App* cmd, bool svg = false) {
    cmd->add_option("-o,--output", out_path, "CSV output path ('-' = stdout)");
    cmd->add_option("--json", json_path, "JSON summary path");
    if (svg) cmd->add_option("--svg", svg_path, "SVG log-log plot path");
  };

  // forward
  auto* cmd_forward = app.add_subcommand("forward", "solve one Dirichlet problem");
  int fwd_mode = 1;
  cmd_forward->add_option("-k,--mode", fwd_mode, "boundary mode e^{ik phi}");
  add_io(cmd_forward);

  // dnmap
  auto* cmd_dnmap = app.add_subcommand("dnmap", "emit the DN matrix as JSON");
  bool dn_diff = false;
  cmd_dnmap->add_flag("--difference", dn_diff, "subtract the zero-potential DN matrix");
  add_io(cmd_dnmap);

  // cgo
  auto* cmd_cgo = app.add_subcommand("cgo", "solve for the oscillating remainder");
  double cgo_n = 8.0, z0re = 0.1, z0im = -0.05;
  bool anti = false;
  cmd_cgo->add_option("-n,--frequency", cgo_n, "phase frequency n");
  cmd_cgo->add_option("--z0re", z0re, "Re z0");
  cmd_cgo->add_option("--z0im", z0im, "Im z0");
  cmd_cgo->add_flag("--anti", anti, "anti-holomorphic orientation");
  add_io(cmd_cgo);

  // decay
  auto* cmd_decay = app.add_subcommand("decay", "run a named decay probe");
  std::string probe = "stationary-phase";
  cmd_decay
      ->add_option("-p,--probe", probe,
                   "stationary-phase | conjugated-cauchy | bukhgeim-remainder | error-term")
      ->check(CLI::IsMember(
          {"stationary-phase", "conjugated-cauchy", "bukhgeim-remainder", "error-term"}));
  add_io(cmd_decay, /*svg=*/true);

  // reconstruct
  auto* cmd_rec = app.add_subcommand("reconstruct", "pointwise potential-difference recovery");
  double rec_n = 8.0;
  std::string rec_mode = "cgo";
  int rec_grid = 5;
  cmd_rec->add_option("-n,--frequency", rec_n, "phase frequency n");
  cmd_rec->add_option("--mode", rec_mode, "born | cgo")->check(CLI::IsMember({"born", "cgo"}));
  cmd_rec->add_option("--z0-grid", rec_grid, "m x m probe sub-grid (default 5)");
  add_io(cmd_rec);

  // sweep
  auto* cmd_sweep = app.add_subcommand("sweep", "bump-family log-stability sweep");
  bool no_probes = false;
  cmd_sweep->add_flag("--no-probes", no_probes, "skip the four decay probes");
  add_io(cmd_sweep, /*svg=*/true);

  // check
  auto* cmd_check = app.add_subcommand("check", "fast invariant battery");
  cmd_check->add_option("--json", json_path, "JSON summary path");

  CLI11_PARSE(app, argc, argv);

  try {
    const Config cfg = load_config(config_path);

    if (cmd_check->parsed()) return run_check(cfg, json_path);

    const DiscGrid g = build_grid(cfg.N, cfg.L);
    const SpaceParams sp = choose_parameters(cfg.epsilon, cfg.a);

    if (cmd_forward->parsed()) {
      const Field q = make_potential(g, cfg.potential, sp);
      const DirichletSolver solver(g, q);
      const int k = fwd_mode;
      const Field u = solver.solve([k](double phi) { return std::polar(1.0, k * phi); });

      std::string csv = "r,re_u,im_u\n";
      const int samples = 64;
      for (int i = 0; i < samples; ++i) {
        const double r = double(i) / samples;
        const cplx v = sample_bilinear(g, u, cplx(r, 0.0));
        csv += fmt("%.17g,%.17g,%.17g\n", r, v.real(), v.imag());
      }
      write_text(out_path, csv);
      write_json(json_path, json{{"command", "forward"},
                                 {"config", config_to_json(cfg)},
                                 {"mode", k},
                                 {"condition_estimate", solver.condition_estimate()}});
      return 0;
    }

    if (cmd_dnmap->parsed()) {
      const Field q = make_potential(g, cfg.potential, sp);
      DNMatrix A = dn_map(g, q, cfg.basis);
      if (dn_diff) A = dn_difference(A, dn_map(g, Field::Zero(g.N, g.N), cfg.basis));
      const json j = A;
      write_text(out_path, j.dump(2) + "\n");
      write_json(json_path, json{{"command", "dnmap"},
                                 {"config", config_to_json(cfg)},
                                 {"difference", dn_diff},
                                 {"operator_norm", dn_operator_norm(A.A)}});
      return 0;
    }

    if (cmd_cgo->parsed()) {
      const CauchyOp op(g);
      const Field q = make_potential(g, cfg.potential, sp);
      const CGOSolution sol =
          bukhgeim_solve(g, op, q, cgo_n, cplx(z0re, z0im),
                         anti ? Orientation::anti_holomorphic : Orientation::holomorphic,
                         cfg.fixed_point_tol);
      std::string csv = "iteration,update_norm\n";
      for (std::size_t i = 0; i < sol.residual_history.size(); ++i)
        csv += fmt("%zu,%.17g\n", i, sol.residual_history[i]);
      write_text(out_path, csv);

      const Field r = sol.f - 1.0;
      write_json(json_path,
                 json{{"command", "cgo"},
                      {"config", config_to_json(cfg)},
                      {"n", sol.n},
                      {"z0", {sol.z0.real(), sol.z0.imag()}},
                      {"orientation", anti ? "anti_holomorphic" : "holomorphic"},
                      {"iterations", sol.iterations},
                      {"converged", sol.converged},
                      {"remainder_l3", lp_norm(g, r, 3.0)},
                      {"remainder_w1p", w1p_norm(g, sol.f, sp.p)},
                      {"pde_residual", pde_residual(g, assemble_u(g, sol), q)}});
      return 0;
    }

    if (cmd_decay->parsed()) {
      const CauchyOp op(g);
      std::vector<DecayReport> reports;
      if (probe == "stationary-phase") {
        const Field q = make_potential(g, cfg.potential, sp);
        reports.push_back(probe_stationary_phase(g, q, cfg.probe_ns));
      } else if (probe == "conjugated-cauchy") {
        reports = probe_conjugated_cauchy(g, op, cfg.probe_ns, sp, cfg.slope_slack);
      } else if (probe == "bukhgeim-remainder") {
        reports.push_back(probe_bukhgeim_remainder(g, op, cfg.probe_ns, sp, cfg.slope_slack));
      } else {
        reports.push_back(probe_error_term(g, op, cfg.probe_ns, sp));
      }

      std::string csv = "probe,n,value\n";
      json jr = json::array();
      bool all_pass = true;
      std::vector<std::pair<std::string, const DecayReport*>> series;
      for (const DecayReport& r : reports) {
        for (std::size_t i = 0; i < r.ns.size(); ++i)
          csv += fmt("%s,%.17g,%.17g\n", r.label.c_str(), r.ns[i], r.values[i]);
        jr.push_back(report_json(r));
        all_pass = all_pass && r.pass;
        series.emplace_back(r.label, &r);
      }
      write_text(out_path, csv);
      write_json(json_path, json{{"command", "decay"},
                                 {"config", config_to_json(cfg)},
                                 {"reports", jr},
                                 {"pass", all_pass}});
      if (!svg_path.empty()) write_text(svg_path, svg_loglog("decay: " + probe, series));
      return all_pass ? 0 : 1;
    }

    if (cmd_rec->parsed()) {
      const CauchyOp op(g);
      const Field q1 = make_potential(g, cfg.potential, sp);
      const Field q2 = Field::Zero(g.N, g.N);
      const ReconstructResult r = reconstruct_potential(
          g, op, q1, q2, rec_n, z0_grid(rec_grid),
          rec_mode == "born" ? ReconstructMode::born : ReconstructMode::cgo,
          cfg.fixed_point_tol);

      std::string csv = "re_z0,im_z0,re_value,im_value,re_reference,im_reference,ok\n";
      for (std::size_t i = 0; i < r.z0s.size(); ++i)
        csv += fmt("%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", r.z0s[i].real(),
                   r.z0s[i].imag(), r.values[i].real(), r.values[i].imag(),
                   r.reference[i].real(), r.reference[i].imag(), int(r.ok[i]));
      write_text(out_path, csv);
      write_json(json_path, json{{"command", "reconstruct"},
                                 {"config", config_to_json(cfg)},
                                 {"mode", rec_mode},
                                 {"n", r.n},
                                 {"K_used", r.K_used},
                                 {"M_used", r.M_used},
                                 {"rms_error", r.rms_error}});
      return 0;
    }

    if (cmd_sweep->parsed()) {
      const CauchyOp op(g);
      const SweepResult sw = stability_sweep(g, op, cfg, !no_probes);

      std::string csv = "t,dn_gap,n_used,err_l2,total_err,bound_value,ok\n";
      for (const StabilityRecord& r : sw.records)
        csv += fmt("%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", r.t, r.dn_gap, r.n_used,
                   r.err_l2, r.total_err, r.bound_value, int(r.ok));
      write_text(out_path, csv);

      json jr = json::array();
      bool probes_pass = true;
      std::vector<std::pair<std::string, const DecayReport*>> series;
      for (const DecayReport& r : sw.reports) {
        jr.push_back(report_json(r));
        probes_pass = probes_pass && r.pass;
        series.emplace_back(r.label, &r);
      }
      bool records_ok = !sw.records.empty();
      for (const StabilityRecord& r : sw.records) records_ok = records_ok && r.ok;
      const bool pass = records_ok && sw.gaps_monotone && sw.errors_monotone &&
                        sw.envelope_ok && probes_pass;
      write_json(json_path, json{{"command", "sweep"},
                                 {"config", config_to_json(cfg)},
                                 {"envelope_C", sw.envelope_C},
                                 {"gaps_monotone", sw.gaps_monotone},
                                 {"errors_monotone", sw.errors_monotone},
                                 {"envelope_ok", sw.envelope_ok},
                                 {"reports", jr},
                                 {"pass", pass}});
      if (!svg_path.empty() && !series.empty())
        write_text(svg_path, svg_loglog("sweep decay probes", series));
      return pass ? 0 : 1;
    }
  } catch (const std::exception& err) {
    std::fprintf(stderr, "cgo2d-lab: %s\n", err.what());
    return 2;
  }
  return 0;
}
