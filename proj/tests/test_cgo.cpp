#include <cgo2d/cgo.hpp>

#include <cgo2d/experiments.hpp>

#include "doctest.h"
#include "test_util.hpp"

#include <cmath>
#include <complex>

using namespace cgo2d;
using testutil::cauchy256;
using testutil::grid256;

namespace {

const cplx kZ0(0.1, -0.05);

// Bump potential with peak amplitude `amp` (bump_field peaks at 1/e).
Field bump_q(const DiscGrid& g, double amp, cplx center, double radius) {
  return amp * std::exp(1.0) * bump_field(g, center, radius);
}

}  // namespace

TEST_CASE("bukhgeim_solve: zero potential gives the trivial remainder") {
  const DiscGrid& g = grid256();
  const CauchyOp& op = cauchy256();

  const CGOSolution sol =
      bukhgeim_solve(g, op, Field::Zero(g.N, g.N), 8.0, kZ0, Orientation::holomorphic);
  CHECK(sol.converged);
  CHECK(sol.iterations <= 2);
  CHECK(testutil::masked_sup_diff(g, sol.f, Field::Ones(g.N, g.N)) < 1e-14);

  // The assembled solution is exactly the quadratic exponential, and its
  // five-point residual against q = 0 is pure discretization error.
  const Field u = assemble_u(g, sol);
  Field want(g.N, g.N);
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i) {
      const cplx w = g.Z(i, j) - kZ0;
      want(i, j) = std::exp(cplx(0, 8.0) * w * w);
    }
  CHECK(testutil::masked_sup_diff(g, u, want) < 1e-13);
  CHECK(pde_residual(g, u, Field::Zero(g.N, g.N)) == doctest::Approx(0.1852).epsilon(0.05));
}

TEST_CASE("bukhgeim_solve contracts fast on a moderate bump potential") {
  const DiscGrid& g = grid256();
  const CauchyOp& op = cauchy256();
  const Field q = bump_q(g, 5.0, cplx(0.15, -0.1), 0.25);

  const CGOSolution sol = bukhgeim_solve(g, op, q, 8.0, kZ0, Orientation::holomorphic);
  REQUIRE(sol.converged);
  CHECK(sol.iterations == 7);
  REQUIRE(sol.residual_history.size() >= 2);

  // First-step contraction factor and remainder size, pinned.
  CHECK(sol.residual_history[1] / sol.residual_history[0] ==
        doctest::Approx(0.040568).epsilon(0.02));
  CHECK(w1p_norm(g, sol.f, 16.0 / 7.0) == doctest::Approx(1.660397).epsilon(0.01));

  // Updates decrease monotonically once the iteration settles.
  for (size_t i = 1; i < sol.residual_history.size(); ++i)
    CHECK(sol.residual_history[i] < sol.residual_history[i - 1]);

  CHECK(pde_residual(g, assemble_u(g, sol), q) == doctest::Approx(0.185201).epsilon(0.05));

  // Larger n contracts harder and shrinks the remainder.
  const CGOSolution s32 = bukhgeim_solve(g, op, q, 32.0, kZ0, Orientation::holomorphic);
  CHECK(s32.residual_history[1] / s32.residual_history[0] ==
        doctest::Approx(0.0080).epsilon(0.1));
  const Field r8 = sol.f - 1.0, r32 = s32.f - 1.0;
  CHECK(lp_norm(g, r32, 2.0) < 0.5 * lp_norm(g, r8, 2.0));
}

TEST_CASE("solutions reflect: conjugate data swaps orientation") {
  const DiscGrid& g = grid256();
  const CauchyOp& op = cauchy256();
  const Field q = bump_q(g, 5.0, cplx(0.15, -0.1), 0.25);

  // Reflecting the potential across the real axis and conjugating z0 maps the
  // holomorphic remainder onto the anti-holomorphic one.
  Field qr(g.N, g.N);
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i) qr(i, j) = q(i, g.N - 1 - j);

  const CGOSolution sh = bukhgeim_solve(g, op, q, 8.0, kZ0, Orientation::holomorphic);
  const CGOSolution sa =
      bukhgeim_solve(g, op, qr, 8.0, std::conj(kZ0), Orientation::anti_holomorphic);
  REQUIRE(sh.converged);
  REQUIRE(sa.converged);

  double worst = 0.0;
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i)
      worst = std::max(worst, std::abs(sh.f(i, g.N - 1 - j) - sa.f(i, j)));
  CHECK(worst < 1e-12);
}

TEST_CASE("bukhgeim_solve reports divergence with its history") {
  const DiscGrid& g = grid256();
  const CauchyOp& op = cauchy256();

  // A huge potential at a sub-threshold frequency blows the iteration up.
  const Field q = bump_q(g, 60.0, cplx(0.15, -0.1), 0.25);
  bool threw = false;
  try {
    bukhgeim_solve(g, op, q, 0.5, kZ0, Orientation::holomorphic);
  } catch (const DivergenceError& err) {
    threw = true;
    CHECK(err.history().size() >= 5);
  }
  CHECK(threw);
}

TEST_CASE("assemble_u refuses unconverged solutions") {
  const DiscGrid& g = grid256();
  CGOSolution bogus;
  bogus.f = Field::Ones(g.N, g.N);
  bogus.n = 8.0;
  bogus.converged = false;
  CHECK_THROWS(assemble_u(g, bogus));
}

TEST_CASE("pde_residual is scale invariant and u-normalized") {
  const DiscGrid& g = grid256();
  Field u(g.N, g.N);
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i) {
      const cplx w = g.Z(i, j) - kZ0;
      u(i, j) = std::exp(cplx(0, 8.0) * w * w);
    }
  const Field zero = Field::Zero(g.N, g.N);
  const double base = pde_residual(g, u, zero);
  CHECK(pde_residual(g, 7.5 * u, zero) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("build_cutoff makes a resolved quintic annulus transition") {
  const DiscGrid& g = grid256();
  const double delta = 0.2;
  const CutoffField cf = build_cutoff(g, delta, kZ0);
  CHECK(cf.delta == delta);

  auto smooth5 = [](double t) { return t * t * t * (10.0 + t * (-15.0 + 6.0 * t)); };
  double worst = 0.0;
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i) {
      const double rho = std::abs(g.Z(i, j) - kZ0);
      double want;
      if (rho <= delta / 2)
        want = 0.0;
      else if (rho >= delta)
        want = 1.0;
      else
        want = smooth5((rho - delta / 2) / (delta / 2));
      worst = std::max(worst, std::abs(cf.h(i, j) - want));
    }
  CHECK(worst < 1e-14);

  // Support of 1 - h is the delta-disc plus at most a one-cell fringe.
  double supp = 0.0;
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i)
      if (g.mask(i, j) && std::abs(1.0 - cf.h(i, j)) > 0.0) supp += g.cell_area;
  CHECK(supp == doctest::Approx(0.125732).epsilon(0.01));
  const double pi = std::acos(-1.0);
  CHECK(supp <= pi * delta * delta + 4 * pi * delta * g.h);

  CHECK(w1p_norm(g, cf.h, 1.5) == doctest::Approx(3.5946).epsilon(0.01));

  // Unresolved transition width is rejected.
  CHECK_THROWS(build_cutoff(g, 0.05, kZ0));
}

TEST_CASE("n0_threshold floors at 1 and grows with the potential bound") {
  const SpaceParams sp;
  CHECK(n0_threshold(sp, 1.0) == doctest::Approx(1.0));
  CHECK(n0_threshold(sp, std::exp(1.0)) == doctest::Approx(15.057322).epsilon(1e-5));
  CHECK(n0_threshold(sp, 0.1) == doctest::Approx(1.0));  // small bounds clamp to 1
  CHECK(n0_threshold(sp, 10.0) > n0_threshold(sp, 5.0));
}
