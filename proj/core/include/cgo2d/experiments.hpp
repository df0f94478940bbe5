#pragma once

#include "cgo2d/cgo.hpp"
#include "cgo2d/forward.hpp"
#include "cgo2d/norms.hpp"
#include "cgo2d/transforms.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace cgo2d {

// theta = min(epsilon, 1/4), r = theta/4, p = min(a, 4/(2-theta)), 1/p* = 1/2 + 1/p.
SpaceParams choose_parameters(double epsilon, double a);

// n = (1/22) ln(1/gap); requires 0 < gap < e^{-1}.
double n_from_dn_gap(double gap);

// Checks x^alpha <= (ln 1/x)^{-beta} on a 10^4-point log-spaced sweep of
// x in (1e-8, e^{-1}); returns whether it holds everywhere. When it fails, the
// worst x (near e^{-beta/alpha}) is reported through worst_x.
bool poly_log_check(double alpha, double beta, double* worst_x = nullptr);

// Log-log least-squares fit of values against ns; pass iff slope <= target + slack.
struct DecayReport {
  std::string label;
  std::vector<double> ns;
  std::vector<double> values;
  double slope = 0.0;
  double intercept = 0.0;
  double target = 0.0;
  double slack = 0.0;
  bool pass = false;
};
DecayReport fit_decay(std::string label, std::vector<double> ns, std::vector<double> values,
                      double target, double slack);

// ---------------------------------------------------------------------------
// Potentials

struct PotentialSpec {
  std::string family = "bump";  // "bump" | "rough"
  double amplitude = 1.0;
  cplx center = cplx(0.1, -0.05);
  std::uint64_t seed = 20240817;
};

// Smooth compactly supported bump exp(1/(|z-c|^2/radius^2 - 1)) on
// |z-c| < radius, zero outside (peak value e^{-1}).
Field bump_field(const DiscGrid& g, cplx center, double radius);

// Config-driven potential: "bump" is the radius-1/4 bump normalized to peak
// amplitude; "rough" is a seeded random-Fourier field with coefficient decay
// (1+|xi|)^{-1-epsilon-2/p}, tapered to the disc and normalized to sup
// amplitude.
Field make_potential(const DiscGrid& g, const PotentialSpec& spec, const SpaceParams& params);

// ---------------------------------------------------------------------------
// Configuration (single JSON document per run)

struct Config {
  int N = 256;
  double L = 2.0;
  BoundaryBasis basis{256, 32};
  double epsilon = 0.25;
  double a = 3.0;
  std::vector<double> probe_ns{8, 16, 32, 64, 128};
  PotentialSpec potential{};
  double fixed_point_tol = 1e-10;
  double slope_slack = 0.15;
};
Config config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const Config& c);

// The m x m sub-grid of probe points z0 with corners at |z0| = 1/2.
std::vector<cplx> z0_grid(int m = 5);

// ---------------------------------------------------------------------------
// Reconstruction

// Boundary-mode matrix of the multiplication-by-Q form in the harmonic basis:
// dA_{jk} = (1/2pi) integrate(W_k Q W_{-j}) with W_k = r^{|k|} e^{ik phi} the
// exact harmonic fields. This is the DN difference with the solution fields
// replaced by their q = 0 limits, and is exact for pairing pure exponential
// traces of (anti-)holomorphic functions.
DNMatrix born_dn_difference(const DiscGrid& g, const Field& Q, int K_max);

enum class ReconstructMode { born, cgo };

struct ReconstructResult {
  std::vector<cplx> z0s;
  std::vector<cplx> values;     // Q_rec(z0)
  std::vector<cplx> reference;  // (q1 - q2)(z0) by interpolation
  std::vector<bool> ok;
  double n = 0.0;
  int K_used = 0;
  int M_used = 0;
  double rms_error = 0.0;  // sqrt(mean |values - reference|^2) over ok entries
};

// Q_rec(z0) = (2n/pi) * alessandrini_pairing(dA, Tr u1, Tr u2) with u1 the
// holomorphic-orientation solution for q1 and u2 the anti-holomorphic one for
// q2; mode born uses f == 1 (pure exponential traces). Per-z0 solver failures
// are recorded in `ok` rather than aborting.
ReconstructResult reconstruct_potential(const DiscGrid& g, const CauchyOp& op, const Field& q1,
                                        const Field& q2, double n,
                                        const std::vector<cplx>& z0_set, ReconstructMode mode,
                                        double fixed_point_tol = 1e-10);

// L2-in-z0 norm of z0 -> (2n/pi) \int e^{inR} Q r dm, via the stationary-phase
// convolution applied to the product Q*r (masked to the disc).
double error_term_integral(const DiscGrid& g, const Field& Q, const Field& r_field, double n);

// ---------------------------------------------------------------------------
// Decay probes (standard configurations; values feed the acceptance criteria)

DecayReport probe_stationary_phase(const DiscGrid& g, const Field& Q,
                                   const std::vector<double>& ns, double slack = 0.1);
// Returns the L3 and Linf reports (sup over the 5x5 z0 sub-grid).
std::vector<DecayReport> probe_conjugated_cauchy(const DiscGrid& g, const CauchyOp& op,
                                                 const std::vector<double>& ns,
                                                 const SpaceParams& params, double slack = 0.15);
DecayReport probe_bukhgeim_remainder(const DiscGrid& g, const CauchyOp& op,
                                     const std::vector<double>& ns, const SpaceParams& params,
                                     double slack = 0.15);
DecayReport probe_error_term(const DiscGrid& g, const CauchyOp& op, const std::vector<double>& ns,
                             const SpaceParams& params, double slack = 0.2);

// ---------------------------------------------------------------------------
// Stability sweep

struct StabilityRecord {
  double t = 0.0;
  double dn_gap = 0.0;
  double n_used = 0.0;
  double err_l2 = 0.0;     // rms |Q_rec - (q1-q2)| over the z0 sub-grid
  double total_err = 0.0;  // max  |Q_rec - (q1-q2)| over the z0 sub-grid
  double bound_value = 0.0;  // (ln 1/gap)^{-theta/2}; envelope is C * this
  bool ok = false;
};

struct SweepResult {
  std::vector<StabilityRecord> records;
  double envelope_C = 0.0;
  bool gaps_monotone = false;
  bool errors_monotone = false;
  bool envelope_ok = false;
  std::vector<DecayReport> reports;
};

// Bump-family sweep over t in {1, 1/2, 1/4, 1/8}: FD DN gaps at the config
// basis, n = max(n_from_dn_gap(gap), 8), CGO-mode reconstruction over the 5x5
// z0 sub-grid, envelope fit err <= C (ln 1/gap)^{-theta/2}. With run_probes,
// the four decay probes are appended to the result.
SweepResult stability_sweep(const DiscGrid& g, const CauchyOp& op, const Config& cfg,
                            bool run_probes = true,
                            const std::vector<double>& ts = {1.0, 0.5, 0.25, 0.125});

}  // namespace cgo2d
