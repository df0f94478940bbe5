#pragma once

#include "cgo2d/norms.hpp"
#include "cgo2d/transforms.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace cgo2d {

enum class Orientation { holomorphic, anti_holomorphic };

// Remainder f of the oscillating solution u = e^{in phase} f, together with the
// Picard iteration diagnostics.
struct CGOSolution {
  Field f;
  double n = 0.0;
  cplx z0 = 0.0;
  Orientation orientation = Orientation::holomorphic;
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;  // masked L2 of successive differences
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), history_(std::move(history)) {}
  const std::vector<double>& history() const { return history_; }

 private:
  std::vector<double> history_;
};

// Picard iteration for the remainder equation. Holomorphic orientation:
//   f = 1 - (1/4) C( e^{-inR} Cbar( e^{inR} q f ) ),
// anti-holomorphic orientation swaps the two Cauchy operators (phase signs
// unchanged). Converges when the masked L2 update drops below
// tol * max(1, ||f||); five consecutive residual increases raise
// DivergenceError carrying the history.
CGOSolution bukhgeim_solve(const DiscGrid& g, const CauchyOp& op, const Field& q, double n,
                           cplx z0, Orientation orientation, double tol = 1e-10,
                           int max_iter = 200);

// u = e^{in (z - z0)^2} f (holomorphic) or e^{in (conj z - conj z0)^2} f
// (anti-holomorphic). Refuses unconverged solutions.
Field assemble_u(const DiscGrid& g, const CGOSolution& sol);

// || Delta_h u + q u ||_2 / ||u||_{W^{1,2},h} over the disc minus a 2-cell
// boundary collar (5-point Laplacian, centered gradients).
double pde_residual(const DiscGrid& g, const Field& u, const Field& q);

// Radial cutoff vanishing on |z-z0| <= delta/2 and equal to 1 outside
// |z-z0| >= delta, with a quintic smoothstep transition. Requires the
// transition to be resolved: delta/2 > 2h.
struct CutoffField {
  Field h;
  double delta = 0.0;
  cplx z0 = 0.0;
};
CutoffField build_cutoff(const DiscGrid& g, double delta, cplx z0);

// Frequency floor above which the fixed-point map is a 1/2-contraction for
// potentials bounded by M_bound: max(1, (C_rp * M_bound)^{-1/expo}) with
// expo = (r - 1/p*) theta - (1 - theta)/5 < 0.
double n0_threshold(const SpaceParams& params, double M_bound, double C_rp = 1.0);

}  // namespace cgo2d
