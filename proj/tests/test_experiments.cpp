#include <cgo2d/experiments.hpp>

#include "doctest.h"
#include "test_util.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

using namespace cgo2d;
using testutil::cauchy256;
using testutil::grid256;

TEST_CASE("choose_parameters pins the exponent book-keeping") {
  const SpaceParams sp = choose_parameters(0.25, 3.0);
  CHECK(sp.theta == doctest::Approx(0.25));
  CHECK(sp.r == doctest::Approx(0.0625));
  CHECK(sp.p == doctest::Approx(16.0 / 7.0));
  CHECK(1.0 / sp.p_star == doctest::Approx(0.5 + 7.0 / 16.0));

  // Large epsilon saturates theta at 1/4; small a wins the p minimum.
  CHECK(choose_parameters(3.0, 3.0).theta == doctest::Approx(0.25));
  CHECK(choose_parameters(0.25, 2.1).p == doctest::Approx(2.1));

  CHECK_THROWS(choose_parameters(0.0, 3.0));
  CHECK_THROWS(choose_parameters(0.25, 2.0));
}

TEST_CASE("n_from_dn_gap inverts the exponential calibration") {
  CHECK(n_from_dn_gap(1.3165e-2) == doctest::Approx(0.196827).epsilon(1e-5));
  CHECK(n_from_dn_gap(1e-9) == doctest::Approx(std::log(1e9) / 22.0).epsilon(1e-12));
  CHECK_THROWS(n_from_dn_gap(0.5));  // not below 1/e
  CHECK_THROWS(n_from_dn_gap(0.0));
  CHECK_THROWS(n_from_dn_gap(-1.0));
}

TEST_CASE("poly_log_check separates the power from the log") {
  double worst = 0.0;

  CHECK(poly_log_check(1.0, 0.0));
  CHECK(poly_log_check(0.5, 1.0));
  CHECK(poly_log_check(1.0, 0.5));

  // Failing cases report the maximizer of x^alpha (ln 1/x)^beta, which sits
  // at x = e^(-beta/alpha) when that is inside the sweep window.
  CHECK_FALSE(poly_log_check(0.1, 1.0, &worst));
  CHECK(worst == doctest::Approx(std::exp(-10.0)).epsilon(0.01));
  CHECK_FALSE(poly_log_check(1.0, 8.0, &worst));
  CHECK(worst == doctest::Approx(std::exp(-8.0)).epsilon(0.01));
}

TEST_CASE("fit_decay recovers exact power laws and validates input") {
  const std::vector<double> ns{8, 16, 32, 64, 128};
  std::vector<double> vals;
  for (double n : ns) vals.push_back(3.0 * std::pow(n, -0.77));

  const DecayReport r = fit_decay("probe", ns, vals, -0.75, 0.15);
  CHECK(r.slope == doctest::Approx(-0.77).epsilon(1e-10));
  CHECK(std::exp(r.intercept) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(r.pass);
  CHECK(r.label == "probe");

  // Slope above target + slack fails the report.
  std::vector<double> slow;
  for (double n : ns) slow.push_back(std::pow(n, -0.3));
  CHECK_FALSE(fit_decay("slow", ns, slow, -0.75, 0.15).pass);

  CHECK_THROWS(fit_decay("bad", {8, 8, 16}, {1, 2, 3}, -1.0, 0.1));    // not increasing
  CHECK_THROWS(fit_decay("bad", {16, 8}, {1, 2}, -1.0, 0.1));          // decreasing
  CHECK_THROWS(fit_decay("bad", {8, 16}, {1, 2, 3}, -1.0, 0.1));       // size mismatch
  CHECK_THROWS(fit_decay("bad", {8, 16}, {1.0, 0.0}, -1.0, 0.1));      // needs positive values
}

TEST_CASE("bump_field is a smooth bump supported on |z - c| < radius") {
  const DiscGrid& g = grid256();
  const cplx c(0.1, -0.05);
  const Field b = bump_field(g, c, 0.25);

  double peak = 0.0;
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i) {
      const double rho = std::abs(g.Z(i, j) - c);
      const double v = b(i, j).real();
      CHECK(b(i, j).imag() == 0.0);
      if (rho >= 0.25) {
        CHECK(v == 0.0);
      } else {
        CHECK(v >= 0.0);  // underflows to 0 within a hair of the rim
        CHECK(v <= std::exp(-1.0) + 1e-15);
        if (rho < 0.24) CHECK(v > 0.0);
      }
      peak = std::max(peak, v);
    }
  // Peak value e^{-1} is attained up to the cell-center offset from c.
  CHECK(peak == doctest::Approx(std::exp(-1.0)).epsilon(1e-3));
}

TEST_CASE("make_potential: bump family is normalized, rough family is seeded") {
  const DiscGrid& g = grid256();
  const SpaceParams sp = choose_parameters(0.25, 3.0);

  PotentialSpec bump;
  bump.amplitude = 0.7;
  const Field qb = make_potential(g, bump, sp);
  CHECK(qb.abs().maxCoeff() == doctest::Approx(0.7).epsilon(1e-3));

  PotentialSpec rough{"rough", 0.8, cplx(0.0, 0.0), 42};
  const Field r1 = make_potential(g, rough, sp);
  const Field r2 = make_potential(g, rough, sp);
  CHECK(r1.abs().maxCoeff() == doctest::Approx(0.8).epsilon(1e-12));
  CHECK((r1 - r2).abs().maxCoeff() == 0.0);  // same seed, identical field

  PotentialSpec other = rough;
  other.seed = 43;
  CHECK((r1 - make_potential(g, other, sp)).abs().maxCoeff() > 0.1);

  // Tapered to the disc: nothing outside the mask.
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i)
      if (!g.mask(i, j)) CHECK(r1(i, j) == cplx(0.0));

  PotentialSpec unknown;
  unknown.family = "sawtooth";
  CHECK_THROWS(make_potential(g, unknown, sp));
}

TEST_CASE("Config serializes to JSON and back") {
  Config c;
  c.N = 128;
  c.probe_ns = {4, 8};
  c.potential.family = "rough";
  c.potential.seed = 99;
  c.slope_slack = 0.2;

  const nlohmann::json j = config_to_json(c);
  const Config back = config_from_json(j);
  CHECK(back.N == 128);
  CHECK(back.L == doctest::Approx(c.L));
  CHECK(back.probe_ns == c.probe_ns);
  CHECK(back.potential.family == "rough");
  CHECK(back.potential.seed == 99);
  CHECK(back.slope_slack == doctest::Approx(0.2));
  CHECK(back.basis.K_max == c.basis.K_max);

  // Partial documents keep defaults for everything else.
  const Config partial = config_from_json(nlohmann::json{{"grid", {{"N", 64}}}});
  CHECK(partial.N == 64);
  CHECK(partial.L == doctest::Approx(2.0));
  CHECK(partial.basis.M_angles == 256);
  CHECK(partial.potential.family == "bump");
  CHECK(partial.fixed_point_tol == doctest::Approx(1e-10));
}

TEST_CASE("z0_grid spans the centered square with |corner| = 1/2") {
  const std::vector<cplx> z0s = z0_grid(5);
  REQUIRE(z0s.size() == 25);

  double biggest = 0.0;
  bool has_zero = false;
  for (const cplx& z : z0s) {
    biggest = std::max(biggest, std::abs(z));
    if (std::abs(z) < 1e-15) has_zero = true;
    // Closed under negation (symmetric probe set).
    CHECK(std::any_of(z0s.begin(), z0s.end(),
                      [&](const cplx& w) { return std::abs(w + z) < 1e-15; }));
  }
  CHECK(biggest == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(has_zero);

  CHECK(z0_grid(3).size() == 9);
}

TEST_CASE("reconstruct_potential recovers a bump difference at moderate n") {
  const DiscGrid& g = grid256();
  const CauchyOp& op = cauchy256();
  const SpaceParams sp = choose_parameters(0.25, 3.0);
  const Field q1 = make_potential(g, PotentialSpec{}, sp);
  const Field zero = Field::Zero(g.N, g.N);
  const std::vector<cplx> z0s = z0_grid(5);

  SUBCASE("born mode, frozen accuracy and mode counts") {
    const ReconstructResult r = reconstruct_potential(g, op, q1, zero, 8.0, z0s,
                                                      ReconstructMode::born);
    REQUIRE(r.values.size() == 25);
    CHECK(std::all_of(r.ok.begin(), r.ok.end(), [](bool b) { return b; }));
    CHECK(r.K_used == 48);
    CHECK(r.M_used == 2048);
    CHECK(r.rms_error == doctest::Approx(2.404061e-1).epsilon(0.02));

    // The reference column really is the interpolated potential difference.
    for (size_t i = 0; i < z0s.size(); ++i)
      CHECK(std::abs(r.reference[i] - sample_bilinear(g, q1, z0s[i])) < 1e-12);

    // Doubling n sharpens the reconstruction noticeably.
    const ReconstructResult r16 = reconstruct_potential(g, op, q1, zero, 16.0, z0s,
                                                        ReconstructMode::born);
    CHECK(r16.K_used == 71);
    CHECK(r16.rms_error == doctest::Approx(1.489617e-1).epsilon(0.02));
    CHECK(r16.rms_error < 0.7 * r.rms_error);
  }

  SUBCASE("cgo mode agrees with born for a weak potential") {
    const ReconstructResult r = reconstruct_potential(g, op, q1, zero, 8.0, z0s,
                                                      ReconstructMode::cgo);
    CHECK(r.rms_error == doctest::Approx(2.365586e-1).epsilon(0.02));
  }

  SUBCASE("identical potentials reconstruct to exactly zero") {
    const ReconstructResult r = reconstruct_potential(g, op, q1, q1, 8.0, z0s,
                                                      ReconstructMode::cgo);
    CHECK(r.rms_error == 0.0);
    for (const cplx& v : r.values) CHECK(v == cplx(0.0));
  }
}

TEST_CASE("error_term_integral is linear in the potential factor") {
  const DiscGrid& g = grid256();
  const SpaceParams sp = choose_parameters(0.25, 3.0);
  const Field Q = 0.5 * make_potential(g, PotentialSpec{}, sp);
  Field r = Field::Zero(g.N, g.N);
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i)
      if (g.mask(i, j)) r(i, j) = cplx(0.01, -0.02) * g.Z(i, j);

  const double base = error_term_integral(g, Q, r, 16.0);
  CHECK(base > 0.0);
  CHECK(error_term_integral(g, 2.0 * Q, r, 16.0) == doctest::Approx(2.0 * base).epsilon(1e-12));
  CHECK(error_term_integral(g, Q, 2.0 * r, 16.0) == doctest::Approx(2.0 * base).epsilon(1e-12));
}

TEST_CASE("decay probes reproduce their frozen traces") {
  const DiscGrid& g = grid256();
  const CauchyOp& op = cauchy256();
  const SpaceParams sp = choose_parameters(0.25, 3.0);
  const std::vector<double> ns{8, 16, 32, 64, 128};

  SUBCASE("stationary phase probe") {
    const Field q1 = make_potential(g, PotentialSpec{}, sp);
    const DecayReport r = probe_stationary_phase(g, q1, ns);
    CHECK(r.slope == doctest::Approx(-0.7032).epsilon(0.01));
    CHECK(r.values.front() == doctest::Approx(2.264437e-1).epsilon(0.01));
    CHECK(r.values.back() == doctest::Approx(3.235112e-2).epsilon(0.01));
    CHECK(r.pass);
  }

  SUBCASE("conjugated Cauchy probe, both exponents") {
    const std::vector<DecayReport> rs = probe_conjugated_cauchy(g, op, ns, sp);
    REQUIRE(rs.size() == 2);
    CHECK(rs[0].slope == doctest::Approx(-0.7819).epsilon(0.01));
    CHECK(rs[0].values.front() == doctest::Approx(8.442893e-2).epsilon(0.01));
    CHECK(rs[0].values.back() == doctest::Approx(9.676029e-3).epsilon(0.01));
    CHECK(rs[0].pass);
    CHECK(rs[1].slope == doctest::Approx(-0.4896).epsilon(0.01));
    CHECK(rs[1].values.front() == doctest::Approx(1.341833e-1).epsilon(0.01));
  }

  SUBCASE("remainder probe") {
    const DecayReport r = probe_bukhgeim_remainder(g, op, ns, sp);
    CHECK(r.slope == doctest::Approx(-0.9428).epsilon(0.01));
    CHECK(r.values.front() == doctest::Approx(2.815360e-2).epsilon(0.01));
    CHECK(r.values.back() == doctest::Approx(2.128398e-3).epsilon(0.01));
    CHECK(r.pass);
  }

  SUBCASE("error-term probe") {
    const DecayReport r = probe_error_term(g, op, ns, sp);
    CHECK(r.slope == doctest::Approx(-0.9357).epsilon(0.01));
    CHECK(r.values.front() == doctest::Approx(4.759085e-3).epsilon(0.01));
    CHECK(r.values.back() == doctest::Approx(3.379427e-4).epsilon(0.01));
    CHECK(r.pass);
  }
}
