#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

namespace cgo2d {

using cplx = std::complex<double>;
using Field = Eigen::ArrayXXcd;   // entry (i,j) lives at z = coords[i] + i*coords[j]
using RealField = Eigen::ArrayXXd;
using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Cell-centered N x N grid on the square [-L,L]^2 with the unit disc marked by `mask`.
struct DiscGrid {
  int N = 0;
  double L = 0.0;
  double h = 0.0;          // cell width 2L/N
  double cell_area = 0.0;  // h^2, the quadrature weight of every cell
  Eigen::ArrayXd coords;   // cell centers -L + (i + 1/2) h, shared by both axes
  RealField X, Y;
  Field Z;                 // X + iY
  Mask mask;               // |z| < 1
  Eigen::Index inside_count = 0;
};

// N must be even and >= 16; L >= 1.5 so the disc sits well inside the square.
DiscGrid build_grid(int N, double L);

// Midpoint quadrature over the masked disc: sum f * h^2.
cplx integrate(const DiscGrid& g, const Field& f);

// Total masked measure (the discrete area of the disc).
double disc_measure(const DiscGrid& g);

// Erode the disc mask by `collar` cells (4-neighbour erosion).
Mask interior_mask(const DiscGrid& g, int collar);

// Values of f on masked cells, column-major scan order.
Eigen::VectorXcd masked_values(const DiscGrid& g, const Field& f);

// Bilinear interpolation of a grid field at an arbitrary point of the open square.
cplx sample_bilinear(const DiscGrid& g, const Field& f, cplx z);

// Centered differences (one-sided rows at the square's edge are left zero).
Field diff_x(const DiscGrid& g, const Field& f);
Field diff_y(const DiscGrid& g, const Field& f);

// ---------------------------------------------------------------------------
// Boundary circle: M uniform angles, Fourier modes e^{ik phi}, |k| <= K_max.

struct BoundaryBasis {
  int M_angles = 256;
  int K_max = 32;
};

// Coefficient vector c_k, k = -K..K (index k + K).
using BoundaryVector = Eigen::VectorXcd;

// Samples of f on the unit circle at M uniform angles, via two-radius Richardson
// extrapolation of bilinear samples at radii 1 - h/2 and 1 - 3h/2.
Eigen::VectorXcd boundary_samples(const DiscGrid& g, const Field& f, int M);

// Fourier analysis/synthesis between M uniform circle samples and modes |k| <= K.
BoundaryVector analyze_boundary(const Eigen::VectorXcd& samples, int K_max);
Eigen::VectorXcd synthesize_boundary(const BoundaryVector& coeffs, int M_angles);

// Boundary trace of a grid field in the mode basis. Requires h <= 0.1.
BoundaryVector trace(const DiscGrid& g, const Field& f, const BoundaryBasis& basis);

}  // namespace cgo2d
