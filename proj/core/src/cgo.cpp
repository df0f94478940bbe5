#include "cgo2d/cgo.hpp"

#include <cmath>
#include <stdexcept>

namespace cgo2d {

namespace {

double masked_l2(const DiscGrid& g, const Field& f) {
  double acc = 0.0;
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i)
      if (g.mask(i, j)) acc += std::norm(f(i, j));
  return std::sqrt(acc * g.cell_area);
}

}  // namespace

CGOSolution bukhgeim_solve(const DiscGrid& g, const CauchyOp& op, const Field& q, double n,
                           cplx z0, Orientation orientation, double tol, int max_iter) {
  if (n <= 0.0) throw std::invalid_argument("bukhgeim_solve: n must be positive");
  if (tol <= 0.0) throw std::invalid_argument("bukhgeim_solve: tol must be positive");
  const Field E = phase_exponential(g, n, z0, +1);
  const Field Em = phase_exponential(g, n, z0, -1);
  Field qm = q;
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i)
      if (!g.mask(i, j)) qm(i, j) = 0.0;

  const bool holo = orientation == Orientation::holomorphic;
  auto step = [&](const Field& f) -> Field {
    const Field inner = E * qm * f;
    Field mid = holo ? op.apply_bar(inner) : op.apply(inner);
    mid *= Em;
    Field outer = holo ? op.apply(mid) : op.apply_bar(mid);
    return 1.0 - 0.25 * outer;
  };

  CGOSolution sol;
  sol.n = n;
  sol.z0 = z0;
  sol.orientation = orientation;
  sol.f = Field::Constant(g.N, g.N, 1.0);

  int growths = 0;
  for (int it = 1; it <= max_iter; ++it) {
    Field next = step(sol.f);
    const double delta = masked_l2(g, next - sol.f);
    if (!sol.residual_history.empty() && delta > sol.residual_history.back()) {
      if (++growths >= 5)
        throw DivergenceError("bukhgeim_solve: residual grew five times in a row",
                              sol.residual_history);
    } else {
      growths = 0;
    }
    sol.residual_history.push_back(delta);
    sol.f = std::move(next);
    sol.iterations = it;
    if (delta <= tol * std::max(1.0, masked_l2(g, sol.f))) {
      sol.converged = true;
      break;
    }
  }
  return sol;
}

Field assemble_u(const DiscGrid& g, const CGOSolution& sol) {
  if (!sol.converged) throw std::invalid_argument("assemble_u: solution did not converge");
  Field E(g.N, g.N);
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i) {
      cplx w = g.Z(i, j);
      w = sol.orientation == Orientation::holomorphic ? w - sol.z0 : std::conj(w) - std::conj(sol.z0);
      const cplx ph = cplx(0.0, sol.n) * w * w;
      E(i, j) = std::exp(ph);
    }
  return E * sol.f;
}

double pde_residual(const DiscGrid& g, const Field& u, const Field& q) {
  const int N = g.N;
  const double ih2 = 1.0 / (g.h * g.h);
  Field lap = Field::Zero(N, N);
  for (int j = 1; j + 1 < N; ++j)
    for (int i = 1; i + 1 < N; ++i)
      lap(i, j) = (u(i + 1, j) + u(i - 1, j) + u(i, j + 1) + u(i, j - 1) - 4.0 * u(i, j)) * ih2;
  const Field gx = diff_x(g, u), gy = diff_y(g, u);
  const Mask inner = interior_mask(g, 2);
  double num = 0.0, den = 0.0;
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      if (!inner(i, j)) continue;
      num += std::norm(lap(i, j) + q(i, j) * u(i, j));
      den += std::norm(u(i, j)) + std::norm(gx(i, j)) + std::norm(gy(i, j));
    }
  if (den == 0.0) throw std::invalid_argument("pde_residual: zero field");
  return std::sqrt(num / den);
}

CutoffField build_cutoff(const DiscGrid& g, double delta, cplx z0) {
  if (delta <= 0.0) throw std::invalid_argument("build_cutoff: delta must be positive");
  if (delta / 2.0 <= 2.0 * g.h)
    throw std::invalid_argument("build_cutoff: transition unresolved (delta/2 <= 2h)");
  CutoffField out;
  out.delta = delta;
  out.z0 = z0;
  out.h = Field(g.N, g.N);
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i) {
      const double r = std::abs(g.Z(i, j) - z0);
      double v;
      if (r <= delta / 2.0) {
        v = 0.0;
      } else if (r >= delta) {
        v = 1.0;
      } else {
        const double t = (r - delta / 2.0) / (delta / 2.0);
        v = t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
      }
      out.h(i, j) = v;
    }
  return out;
}

double n0_threshold(const SpaceParams& params, double M_bound, double C_rp) {
  if (M_bound <= 0.0 || C_rp <= 0.0)
    throw std::invalid_argument("n0_threshold: bounds must be positive");
  const double expo =
      (params.r - 1.0 / params.p_star) * params.theta - 0.2 * (1.0 - params.theta);
  if (expo >= 0.0) throw std::logic_error("n0_threshold: nonnegative exponent");
  return std::max(1.0, std::pow(C_rp * M_bound, -1.0 / expo));
}

}  // namespace cgo2d
