#pragma once

#include "cgo2d/grid.hpp"

#include <vector>

namespace cgo2d {

// Function-space parameters used by the decay probes and the stability pipeline:
// theta = min(epsilon, 1/4), r = theta/4, p = min(a, 4/(2-theta)), 1/p* = 1/2 + 1/p.
struct SpaceParams {
  double epsilon = 0.25;
  double a = 3.0;
  double theta = 0.25;
  double r = 0.0625;
  double p = 16.0 / 7.0;
  double p_star = 16.0 / 15.0;
};

// Masked L^p norm with h^2 cell weights; p in [1, inf] (inf = sup over the disc).
double lp_norm(const DiscGrid& g, const Field& f, double p);

// Lorentz L^(p,q) norm of the masked field, built from the maximal rearrangement
// f**: the layer measure runs over the masked cells only (each of measure h^2)
// and the t-integral is truncated at the total masked measure. Requires p > 1;
// q = inf uses the sup form sup_t t^{1/p} f**(t).
double lorentz_norm(const DiscGrid& g, const Field& f, double p, double q);

// Same norm from raw magnitudes with uniform cell weight w (shared core; used
// for fields living on derived lattices such as convolution outputs).
double lorentz_norm_samples(std::vector<double> magnitudes, double w, double p, double q);

// Fractional Sobolev norm W^{alpha,2} of the zero-extended field through the
// square's DFT with multiplier (1 + |xi|^2)^alpha; alpha = 0 reproduces the L^2
// norm of the extension exactly.
double sobolev_frac_norm(const DiscGrid& g, const Field& f, double alpha);

// Discrete W^{1,p} norm over the disc: (sum (|f|^p + |fx|^p + |fy|^p) h^2)^{1/p}.
double w1p_norm(const DiscGrid& g, const Field& f, double p);

// Boundary Sobolev norm H^s of a mode-coefficient vector: (sum (1+k^2)^s |c_k|^2)^{1/2}.
double boundary_sobolev_norm(const BoundaryVector& coeffs, double s);

// Operator norm of a DN-difference matrix A_{jk} (j,k = -K..K) as a map
// H^{1/2} -> H^{-1/2}: largest singular value of D^{-1/2} A D^{-1/2} with
// D = diag((1+k^2)^{1/2}).
double dn_operator_norm(const Eigen::MatrixXcd& A);

}  // namespace cgo2d
