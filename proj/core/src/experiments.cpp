#include "cgo2d/experiments.hpp"

#include "cgo2d/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace cgo2d {

SpaceParams choose_parameters(double epsilon, double a) {
  if (epsilon <= 0.0) throw std::invalid_argument("choose_parameters: epsilon must be > 0");
  if (a <= 2.0) throw std::invalid_argument("choose_parameters: a must be > 2");
  SpaceParams sp;
  sp.epsilon = epsilon;
  sp.a = a;
  sp.theta = std::min(epsilon, 0.25);
  sp.r = sp.theta / 4.0;
  sp.p = std::min(a, 4.0 / (2.0 - sp.theta));
  sp.p_star = 1.0 / (0.5 + 1.0 / sp.p);
  return sp;
}

double n_from_dn_gap(double gap) {
  if (!(gap > 0.0) || !(gap < std::exp(-1.0)))
    throw std::invalid_argument("n_from_dn_gap: gap must lie in (0, e^{-1})");
  return std::log(1.0 / gap) / 22.0;
}

bool poly_log_check(double alpha, double beta, double* worst_x) {
  if (alpha <= 0.0) throw std::invalid_argument("poly_log_check: alpha must be > 0");
  const int n = 10000;
  const double lo = std::log(1e-8), hi = std::log(std::exp(-1.0));
  bool holds = true;
  double worst = std::exp(lo), worst_ratio = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = std::exp(lo + (hi - lo) * (i + 0.5) / n);
    const double lhs = std::pow(x, alpha);
    const double rhs = std::pow(std::log(1.0 / x), -beta);
    const double ratio = lhs / rhs;  // maximized near x = e^{-beta/alpha}
    if (ratio > 1.0) holds = false;
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst = x;
    }
  }
  if (worst_x) *worst_x = worst;
  return holds;
}

DecayReport fit_decay(std::string label, std::vector<double> ns, std::vector<double> values,
                      double target, double slack) {
  if (ns.size() != values.size() || ns.size() < 2)
    throw std::invalid_argument("fit_decay: need at least two (n, value) pairs");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (i > 0 && !(ns[i] > ns[i - 1]))
      throw std::invalid_argument("fit_decay: ns must be strictly increasing");
    if (!(values[i] > 0.0)) throw std::invalid_argument("fit_decay: values must be positive");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = double(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double x = std::log(ns[i]), y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  DecayReport rep;
  rep.label = std::move(label);
  rep.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  rep.intercept = (sy - rep.slope * sx) / m;
  rep.ns = std::move(ns);
  rep.values = std::move(values);
  rep.target = target;
  rep.slack = slack;
  rep.pass = rep.slope <= target + slack;
  return rep;
}

Field bump_field(const DiscGrid& g, cplx center, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("bump_field: radius must be positive");
  Field out = Field::Zero(g.N, g.N);
  const double inv2 = 1.0 / (radius * radius);
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i) {
      const double r2 = std::norm(g.Z(i, j) - center) * inv2;
      if (r2 < 1.0) out(i, j) = std::exp(1.0 / (r2 - 1.0));
    }
  return out;
}

namespace {

Field masked_copy(const DiscGrid& g, const Field& f) {
  Field out = f;
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i)
      if (!g.mask(i, j)) out(i, j) = 0.0;
  return out;
}

Field rough_potential(const DiscGrid& g, const PotentialSpec& spec, const SpaceParams& params) {
  const int N = g.N;
  const double decay_expo = 1.0 + params.epsilon + 2.0 / params.p;
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Field coef = Field::Zero(N, N);
  const Eigen::ArrayXd xi = fft_frequencies(N, g.h);
  // Fill one half-lattice with seeded Gaussians, mirror Hermitian so the
  // synthesized field is real; traversal order is fixed for determinism.
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      const double g1 = normal(rng), g2 = normal(rng);
      const double mag = std::pow(1.0 + std::hypot(xi[i], xi[j]), -decay_expo);
      coef(i, j) = mag * cplx(g1, g2);
    }
  Field spec_arr = Field::Zero(N, N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      const int im = (N - i) % N, jm = (N - j) % N;
      spec_arr(i, j) = 0.5 * (coef(i, j) + std::conj(coef(im, jm)));
    }
  Fft2::get(N).inverse(spec_arr);
  Field field = spec_arr;  // real up to rounding

  // Taper to the disc and normalize the sup to the requested amplitude.
  const Field taper = bump_field(g, 0.0, 0.85) * std::exp(1.0);
  field *= taper;
  double sup = 0.0;
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) sup = std::max(sup, std::abs(field(i, j)));
  if (sup == 0.0) throw std::runtime_error("rough potential degenerated to zero");
  field *= spec.amplitude / sup;
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) field(i, j) = cplx(field(i, j).real(), 0.0);
  return field;
}

}  // namespace

Field make_potential(const DiscGrid& g, const PotentialSpec& spec, const SpaceParams& params) {
  if (spec.family == "bump") {
    // peak of the raw bump is e^{-1}; normalize so the peak equals amplitude
    return bump_field(g, spec.center, 0.25) * (spec.amplitude * std::exp(1.0));
  }
  if (spec.family == "rough") return rough_potential(g, spec, params);
  throw std::invalid_argument("make_potential: unknown family '" + spec.family + "'");
}

Config config_from_json(const nlohmann::json& j) {
  Config c;
  if (j.contains("grid")) {
    c.N = j["grid"].value("N", c.N);
    c.L = j["grid"].value("L", c.L);
  }
  if (j.contains("boundary")) {
    c.basis.M_angles = j["boundary"].value("M_angles", c.basis.M_angles);
    c.basis.K_max = j["boundary"].value("K_max", c.basis.K_max);
  }
  if (j.contains("space")) {
    c.epsilon = j["space"].value("epsilon", c.epsilon);
    c.a = j["space"].value("a", c.a);
  }
  if (j.contains("probe_ns")) c.probe_ns = j["probe_ns"].get<std::vector<double>>();
  if (j.contains("potential")) {
    const auto& p = j["potential"];
    c.potential.family = p.value("family", c.potential.family);
    c.potential.amplitude = p.value("amplitude", c.potential.amplitude);
    if (p.contains("center"))
      c.potential.center = cplx(p["center"][0].get<double>(), p["center"][1].get<double>());
    c.potential.seed = p.value("seed", c.potential.seed);
  }
  if (j.contains("tolerances")) {
    c.fixed_point_tol = j["tolerances"].value("fixed_point", c.fixed_point_tol);
    c.slope_slack = j["tolerances"].value("slope_slack", c.slope_slack);
  }
  return c;
}

nlohmann::json config_to_json(const Config& c) {
  return nlohmann::json{
      {"grid", {{"N", c.N}, {"L", c.L}}},
      {"boundary", {{"M_angles", c.basis.M_angles}, {"K_max", c.basis.K_max}}},
      {"space", {{"epsilon", c.epsilon}, {"a", c.a}}},
      {"probe_ns", c.probe_ns},
      {"potential",
       {{"family", c.potential.family},
        {"amplitude", c.potential.amplitude},
        {"center", {c.potential.center.real(), c.potential.center.imag()}},
        {"seed", c.potential.seed}}},
      {"tolerances", {{"fixed_point", c.fixed_point_tol}, {"slope_slack", c.slope_slack}}}};
}

std::vector<cplx> z0_grid(int m) {
  if (m < 1) throw std::invalid_argument("z0_grid: m must be positive");
  const double half = 0.5 / std::numbers::sqrt2;  // corners at |z0| = 1/2
  std::vector<cplx> out;
  out.reserve(std::size_t(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const double x = m == 1 ? 0.0 : -half + 2.0 * half * a / (m - 1);
      const double y = m == 1 ? 0.0 : -half + 2.0 * half * b / (m - 1);
      out.emplace_back(x, y);
    }
  return out;
}

DNMatrix born_dn_difference(const DiscGrid& g, const Field& Q, int K_max) {
  const int n = 2 * K_max + 1;
  const Eigen::Index C = g.inside_count;
  Eigen::MatrixXcd W(n, C);
  {
    Eigen::VectorXd rad(C), phi(C);
    Eigen::Index c = 0;
    for (int j = 0; j < g.N; ++j)
      for (int i = 0; i < g.N; ++i)
        if (g.mask(i, j)) {
          rad[c] = std::abs(g.Z(i, j));
          phi[c] = std::arg(g.Z(i, j));
          ++c;
        }
    std::vector<Eigen::VectorXd> pow_cache(K_max + 1);
    pow_cache[0] = Eigen::VectorXd::Ones(C);
    for (int a = 1; a <= K_max; ++a) pow_cache[a] = pow_cache[a - 1].cwiseProduct(rad);
    for (int k = -K_max; k <= K_max; ++k) {
      const Eigen::VectorXd& ra = pow_cache[std::abs(k)];
      for (Eigen::Index c2 = 0; c2 < C; ++c2) {
        const double a = k * phi[c2];
        W(k + K_max, c2) = ra[c2] * cplx(std::cos(a), std::sin(a));
      }
    }
  }
  const Eigen::VectorXcd qw = masked_values(g, Q) * g.cell_area;
  Eigen::MatrixXcd Wr(n, C);
  for (int r = 0; r < n; ++r) Wr.row(r) = W.row(n - 1 - r);
  DNMatrix out;
  out.K_max = K_max;
  out.N = g.N;
  out.L = g.L;
  out.A = Wr * qw.asDiagonal() * W.transpose() / (2.0 * std::numbers::pi);
  return out;
}

namespace {

int trace_mode_count(double n) { return int(std::ceil(2.9 * n)) + 24; }

int trace_angle_count(int K) {
  int M = 2048;
  while (M < 6 * K) M *= 2;
  return M;
}

// Boundary samples of the pure chirp exponential for either orientation.
Eigen::VectorXcd chirp_samples(double n, cplx z0, bool anti, int M) {
  Eigen::VectorXcd out(M);
  for (int m = 0; m < M; ++m) {
    const double phi = 2.0 * std::numbers::pi * m / M;
    const cplx b(std::cos(phi), std::sin(phi));
    const cplx w = anti ? std::conj(b) - std::conj(z0) : b - z0;
    out[m] = std::exp(cplx(0.0, n) * w * w);
  }
  return out;
}

}  // namespace

ReconstructResult reconstruct_potential(const DiscGrid& g, const CauchyOp& op, const Field& q1,
                                        const Field& q2, double n,
                                        const std::vector<cplx>& z0_set, ReconstructMode mode,
                                        double fixed_point_tol) {
  if (n <= 0.0) throw std::invalid_argument("reconstruct_potential: n must be positive");
  const int K = trace_mode_count(n);
  const int M = trace_angle_count(K);
  const Field Q = masked_copy(g, q1 - q2);
  const DNMatrix dA = born_dn_difference(g, Q, K);

  ReconstructResult res;
  res.z0s = z0_set;
  res.n = n;
  res.K_used = K;
  res.M_used = M;
  res.values.assign(z0_set.size(), cplx(0.0, 0.0));
  res.reference.assign(z0_set.size(), cplx(0.0, 0.0));
  res.ok.assign(z0_set.size(), false);

  const double scale = 2.0 * n / std::numbers::pi;
  double acc = 0.0;
  int good = 0;
  for (std::size_t s = 0; s < z0_set.size(); ++s) {
    const cplx z0 = z0_set[s];
    res.reference[s] = sample_bilinear(g, Q, z0);
    try {
      Eigen::VectorXcd s1 = chirp_samples(n, z0, false, M);
      Eigen::VectorXcd s2 = chirp_samples(n, z0, true, M);
      if (mode == ReconstructMode::cgo) {
        const CGOSolution f1 =
            bukhgeim_solve(g, op, q1, n, z0, Orientation::holomorphic, fixed_point_tol);
        if (!f1.converged) throw DivergenceError("cgo trace: unconverged", f1.residual_history);
        s1 = s1.cwiseProduct(boundary_samples(g, f1.f, M));
        const CGOSolution f2 =
            bukhgeim_solve(g, op, q2, n, z0, Orientation::anti_holomorphic, fixed_point_tol);
        if (!f2.converged) throw DivergenceError("cgo trace: unconverged", f2.residual_history);
        s2 = s2.cwiseProduct(boundary_samples(g, f2.f, M));
      }
      const BoundaryVector t1 = analyze_boundary(s1, K);
      const BoundaryVector t2 = analyze_boundary(s2, K);
      res.values[s] = scale * alessandrini_pairing(dA, t1, t2);
      res.ok[s] = true;
      acc += std::norm(res.values[s] - res.reference[s]);
      ++good;
    } catch (const std::exception&) {
      res.ok[s] = false;
    }
  }
  res.rms_error = good > 0 ? std::sqrt(acc / good) : 0.0;
  return res;
}

double error_term_integral(const DiscGrid& g, const Field& Q, const Field& r_field, double n) {
  const Field prod = masked_copy(g, Q * r_field);
  return lp_norm(g, stationary_phase(g, prod, n), 2.0);
}

DecayReport probe_stationary_phase(const DiscGrid& g, const Field& Q,
                                   const std::vector<double>& ns, double slack) {
  std::vector<double> vals;
  vals.reserve(ns.size());
  for (double n : ns) vals.push_back(lp_norm(g, stationary_phase(g, Q, n) - Q, 2.0));
  return fit_decay("stationary-phase", std::vector<double>(ns), std::move(vals), -0.5, slack);
}

std::vector<DecayReport> probe_conjugated_cauchy(const DiscGrid& g, const CauchyOp& op,
                                                 const std::vector<double>& ns,
                                                 const SpaceParams& params, double slack) {
  const Field a = bump_field(g, 0.0, 0.8);  // standard probe field
  const std::vector<cplx> z0s = z0_grid(5);
  std::vector<double> v3, vi;
  for (double n : ns) {
    double m3 = 0.0, mi = 0.0;
    for (cplx z0 : z0s) {
      const Field c = conjugated_cauchy(op, g, a, n, z0);
      m3 = std::max(m3, lp_norm(g, c, 3.0));
      mi = std::max(mi, lp_norm(g, c, std::numeric_limits<double>::infinity()));
    }
    v3.push_back(m3);
    vi.push_back(mi);
  }
  const double target3 = params.r - (0.5 + 1.0 / 3.0);  // r - 1/p* at p = 3
  std::vector<DecayReport> out;
  out.push_back(fit_decay("conjugated-cauchy-l3", std::vector<double>(ns), std::move(v3), target3, slack));
  out.push_back(fit_decay("conjugated-cauchy-linf", std::vector<double>(ns), std::move(vi), -0.2, 0.1));
  return out;
}

DecayReport probe_bukhgeim_remainder(const DiscGrid& g, const CauchyOp& op,
                                     const std::vector<double>& ns, const SpaceParams& params,
                                     double slack) {
  Field q = bump_field(g, cplx(0.15, -0.1), 0.25) * (5.0 * std::exp(1.0));  // sup = 5
  const std::vector<cplx> z0s = z0_grid(5);
  std::vector<double> vals;
  for (double n : ns) {
    double m3 = 0.0;
    for (cplx z0 : z0s) {
      const CGOSolution sol = bukhgeim_solve(g, op, q, n, z0, Orientation::holomorphic);
      m3 = std::max(m3, lp_norm(g, sol.f - 1.0, 3.0));
    }
    vals.push_back(m3);
  }
  const double target = params.r - (0.5 + 1.0 / 3.0);
  return fit_decay("bukhgeim-remainder", std::vector<double>(ns), std::move(vals), target, slack);
}

DecayReport probe_error_term(const DiscGrid& g, const CauchyOp& op, const std::vector<double>& ns,
                             const SpaceParams& params, double slack) {
  Field q = bump_field(g, cplx(0.15, -0.1), 0.25) * (5.0 * std::exp(1.0));
  const Field Q = bump_field(g, cplx(0.1, -0.05), 0.25) * (0.5 * std::exp(1.0));
  std::vector<double> vals;
  for (double n : ns) {
    // frozen mid-disc surrogate: the remainder of one solve at z0* = 0
    const CGOSolution sol = bukhgeim_solve(g, op, q, n, 0.0, Orientation::holomorphic);
    const Field r = masked_copy(g, sol.f - 1.0);
    vals.push_back(error_term_integral(g, Q, r, n));
  }
  return fit_decay("error-term (mid-disc surrogate)", std::vector<double>(ns), std::move(vals),
                   -params.theta / 2.0, slack);
}

SweepResult stability_sweep(const DiscGrid& g, const CauchyOp& op, const Config& cfg,
                            bool run_probes, const std::vector<double>& ts) {
  const SpaceParams params = choose_parameters(cfg.epsilon, cfg.a);
  const Field Q1 = make_potential(g, cfg.potential, params);
  const Field zero = Field::Zero(g.N, g.N);
  const DirichletSolver solver0(g, zero);
  const DNMatrix A0 = dn_map(g, zero, cfg.basis, solver0, solver0);
  const std::vector<cplx> z0s = z0_grid(5);
  constexpr double n_min = 8.0;

  SweepResult out;
  for (double t : ts) {
    StabilityRecord rec;
    rec.t = t;
    try {
      const Field qt = Q1 * t;
      const DirichletSolver solver_t(g, qt);
      const DNMatrix At = dn_map(g, qt, cfg.basis, solver_t, solver0);
      rec.dn_gap = dn_operator_norm(dn_difference(At, A0).A);
      if (!(rec.dn_gap > 0.0) || !(rec.dn_gap < std::exp(-1.0))) {
        out.records.push_back(rec);  // excluded record (ok = false)
        continue;
      }
      rec.n_used = std::max(n_from_dn_gap(rec.dn_gap), n_min);
      const ReconstructResult rr = reconstruct_potential(g, op, qt, zero, rec.n_used, z0s,
                                                         ReconstructMode::cgo, cfg.fixed_point_tol);
      rec.err_l2 = rr.rms_error;
      double worst = 0.0;
      for (std::size_t s = 0; s < rr.values.size(); ++s)
        if (rr.ok[s]) worst = std::max(worst, std::abs(rr.values[s] - rr.reference[s]));
      rec.total_err = worst;
      rec.bound_value = std::pow(std::log(1.0 / rec.dn_gap), -params.theta / 2.0);
      rec.ok = true;
    } catch (const WellPosednessError&) {
      rec.ok = false;
    }
    out.records.push_back(rec);
  }

  // Envelope fit and monotonicity over the included records.
  std::vector<const StabilityRecord*> live;
  for (const auto& r : out.records)
    if (r.ok) live.push_back(&r);
  out.gaps_monotone = true;
  out.errors_monotone = true;
  double C = 0.0;
  for (std::size_t i = 0; i < live.size(); ++i) {
    if (i > 0) {
      out.gaps_monotone = out.gaps_monotone && live[i]->dn_gap < live[i - 1]->dn_gap;
      out.errors_monotone = out.errors_monotone && live[i]->err_l2 < live[i - 1]->err_l2;
    }
    C = std::max(C, live[i]->err_l2 / live[i]->bound_value);
  }
  out.envelope_C = C;
  out.envelope_ok = !live.empty();
  for (const auto* r : live)
    out.envelope_ok = out.envelope_ok && r->err_l2 <= C * r->bound_value + 1e-12;

  if (run_probes) {
    out.reports.push_back(probe_stationary_phase(g, Q1, cfg.probe_ns));
    auto cc = probe_conjugated_cauchy(g, op, cfg.probe_ns, params, cfg.slope_slack);
    out.reports.insert(out.reports.end(), cc.begin(), cc.end());
    out.reports.push_back(probe_bukhgeim_remainder(g, op, cfg.probe_ns, params, cfg.slope_slack));
    out.reports.push_back(probe_error_term(g, op, cfg.probe_ns, params));
  }
  return out;
}

}  // namespace cgo2d
