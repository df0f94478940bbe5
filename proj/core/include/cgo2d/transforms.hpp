#pragma once

#include "cgo2d/grid.hpp"

#include <functional>

namespace cgo2d {

// R(z; z0) = 2 Re((z - z0)^2), the real phase with |e^{inR}| = 1.
RealField phase_quadratic(const DiscGrid& g, cplx z0);

// e^{i sign n R(z; z0)} as a grid field; sign must be +1 or -1.
Field phase_exponential(const DiscGrid& g, double n, cplx z0, int sign);

// Cauchy transforms C f(z) = (1/pi) \int f(w)/(z-w) dm(w) and its conjugate
// Cbar, realized as one zero-padded FFT convolution with the sampled kernel
// h^2/(pi w); the singular cell carries the exact cell average of the kernel
// (zero, by odd symmetry), evaluated by symmetric quadrature at setup.
class CauchyOp {
 public:
  explicit CauchyOp(const DiscGrid& g);

  Field apply(const Field& f) const;      // C f
  Field apply_bar(const Field& f) const;  // Cbar f

  // Exact average of 1/(pi z) over the centered h-square (symmetric quadrature).
  static cplx singular_cell_average(double h);

 private:
  int N_;
  Field khat_, kbhat_;  // frequency-domain kernels on the doubled grid
};

// C(e^{-inR} a): the phase-conjugated Cauchy transform whose decay in n drives
// the fixed-point contraction.
Field conjugated_cauchy(const CauchyOp& op, const DiscGrid& g, const Field& a, double n, cplx z0);

// Stationary-phase operator Q -> (2n/pi) \int e^{inR(z;z0)} Q(z) dm(z), an
// approximate identity in z0. Executed as a padded convolution evaluated
// through the kernel's exact Fourier symbol e^{-i(xi1^2 - xi2^2)/(8n)}.
Field stationary_phase(const DiscGrid& g, const Field& Q, double n);

// Wirtinger derivatives by centered differences: dbar = (d/dx + i d/dy)/2,
// dholo = (d/dx - i d/dy)/2.
Field dbar(const DiscGrid& g, const Field& f);
Field dholo(const DiscGrid& g, const Field& f);

// Sampled sup over |xi| <= 4 (quasi-random, deterministic) of
// |1 - e^{-i(xi^2 + conj(xi)^2)}| / |xi|^alpha.
double gaussian_holder_sup(double alpha, int samples);

// Relative interior L^2 residual of the reproduction formula
// f = (boundary integral of f) + C(dbar f) on the disc, with the boundary
// integral evaluated by the M-angle trapezoid rule from the supplied trace.
double cauchy_pompeiu_residual(const DiscGrid& g, const CauchyOp& op, const Field& f,
                               const Field& dbar_f,
                               const std::function<cplx(double)>& boundary_value, int M_angles);

// Discrete linear convolution (f * g)(zeta) = sum f(z_k) g(zeta - z_k) h^2 on
// the doubled lattice zeta_s = origin + s h (cell-center sums land between
// grid nodes); values.size() is 2N x 2N.
struct ConvResult {
  Field values;
  double origin;
  double h;
};
ConvResult convolve_fields(const DiscGrid& g, const Field& f, const Field& gfield);

}  // namespace cgo2d
