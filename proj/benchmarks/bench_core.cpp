// Microbenchmarks for the hot kernels: the FFT-based Cauchy transform, the
// oscillatory smoothing operator, one Picard step of the remainder iteration,
// and the Dirichlet solve (factorization amortized, per-trace cost measured).

#include <cgo2d/cgo.hpp>
#include <cgo2d/experiments.hpp>
#include <cgo2d/forward.hpp>
#include <cgo2d/transforms.hpp>

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

namespace {

using namespace cgo2d;

Field test_field(const DiscGrid& g) {
  Field f = Field::Zero(g.N, g.N);
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i)
      if (g.mask(i, j)) {
        const cplx z = g.Z(i, j);
        f(i, j) = (1.0 - std::norm(z)) * std::exp(cplx(0.0, 3.0 * z.real()));
      }
  return f;
}

void bm_cauchy_apply(benchmark::State& state) {
  const DiscGrid g = build_grid(int(state.range(0)), 2.0);
  const CauchyOp op(g);
  const Field f = test_field(g);
  for (auto _ : state) {
    Field out = op.apply(f);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_cauchy_apply)->Arg(128)->Arg(256)->Arg(512)->Complexity(benchmark::oNSquared);

void bm_stationary_phase(benchmark::State& state) {
  const DiscGrid g = build_grid(int(state.range(0)), 2.0);
  const Field f = test_field(g);
  for (auto _ : state) {
    Field out = stationary_phase(g, f, 32.0);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(bm_stationary_phase)->Arg(128)->Arg(256)->Arg(512);

// One fixed-point update f -> 1 - (1/4) C(e^{-inR} Cbar(e^{inR} q f)).
void bm_picard_step(benchmark::State& state) {
  const DiscGrid g = build_grid(int(state.range(0)), 2.0);
  const CauchyOp op(g);
  const SpaceParams sp = choose_parameters(0.25, 3.0);
  const Field q = make_potential(g, PotentialSpec{}, sp);
  const Field phase = phase_exponential(g, 8.0, cplx(0.1, -0.05), +1);
  const Field phase_inv = phase_exponential(g, 8.0, cplx(0.1, -0.05), -1);
  Field f = Field::Ones(g.N, g.N);
  for (auto _ : state) {
    const Field inner = op.apply_bar(phase * (q * f));
    f = 1.0 - 0.25 * op.apply(phase_inv * inner);
    benchmark::DoNotOptimize(f.data());
  }
}
BENCHMARK(bm_picard_step)->Arg(128)->Arg(256)->Arg(512);

void bm_dirichlet_factorize(benchmark::State& state) {
  const DiscGrid g = build_grid(int(state.range(0)), 2.0);
  const SpaceParams sp = choose_parameters(0.25, 3.0);
  const Field q = make_potential(g, PotentialSpec{}, sp);
  for (auto _ : state) {
    DirichletSolver solver(g, q);
    benchmark::DoNotOptimize(solver.condition_estimate());
  }
}
BENCHMARK(bm_dirichlet_factorize)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void bm_dirichlet_solve(benchmark::State& state) {
  const DiscGrid g = build_grid(int(state.range(0)), 2.0);
  const SpaceParams sp = choose_parameters(0.25, 3.0);
  const Field q = make_potential(g, PotentialSpec{}, sp);
  const DirichletSolver solver(g, q);
  for (auto _ : state) {
    Field u = solver.solve([](double phi) { return std::polar(1.0, 3.0 * phi); });
    benchmark::DoNotOptimize(u.data());
  }
}
BENCHMARK(bm_dirichlet_solve)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void bm_lorentz_norm(benchmark::State& state) {
  const DiscGrid g = build_grid(int(state.range(0)), 2.0);
  const Field f = test_field(g);
  for (auto _ : state) {
    const double v = lorentz_norm(g, f, 16.0 / 7.0, 16.0 / 15.0);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(bm_lorentz_norm)->Arg(256)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
