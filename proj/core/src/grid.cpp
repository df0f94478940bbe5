#include "cgo2d/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cgo2d {

DiscGrid build_grid(int N, double L) {
  if (N < 16 || N % 2 != 0) throw std::invalid_argument("build_grid: N must be even and >= 16");
  if (L < 1.5) throw std::invalid_argument("build_grid: L must be >= 1.5");
  DiscGrid g;
  g.N = N;
  g.L = L;
  g.h = 2.0 * L / N;
  g.cell_area = g.h * g.h;
  g.coords = Eigen::ArrayXd(N);
  for (int i = 0; i < N; ++i) g.coords[i] = -L + (i + 0.5) * g.h;
  g.X = RealField(N, N);
  g.Y = RealField(N, N);
  g.Z = Field(N, N);
  g.mask = Mask(N, N);
  g.inside_count = 0;
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < N; ++i) {
      const double x = g.coords[i], y = g.coords[j];
      g.X(i, j) = x;
      g.Y(i, j) = y;
      g.Z(i, j) = cplx(x, y);
      const bool in = x * x + y * y < 1.0;
      g.mask(i, j) = in;
      if (in) ++g.inside_count;
    }
  }
  return g;
}

cplx integrate(const DiscGrid& g, const Field& f) {
  cplx acc = 0.0;
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i)
      if (g.mask(i, j)) acc += f(i, j);
  return acc * g.cell_area;
}

double disc_measure(const DiscGrid& g) { return double(g.inside_count) * g.cell_area; }

Mask interior_mask(const DiscGrid& g, int collar) {
  Mask m = g.mask;
  for (int c = 0; c < collar; ++c) {
    Mask m2 = m;
    for (int j = 0; j < g.N; ++j)
      for (int i = 0; i < g.N; ++i) {
        if (!m(i, j)) { m2(i, j) = false; continue; }
        bool keep = i > 0 && i + 1 < g.N && j > 0 && j + 1 < g.N;
        if (keep) keep = m(i - 1, j) && m(i + 1, j) && m(i, j - 1) && m(i, j + 1);
        m2(i, j) = keep;
      }
    m = m2;
  }
  return m;
}

Eigen::VectorXcd masked_values(const DiscGrid& g, const Field& f) {
  Eigen::VectorXcd v(g.inside_count);
  Eigen::Index c = 0;
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i)
      if (g.mask(i, j)) v[c++] = f(i, j);
  return v;
}

cplx sample_bilinear(const DiscGrid& g, const Field& f, cplx z) {
  const double x = (z.real() + g.L) / g.h - 0.5;
  const double y = (z.imag() + g.L) / g.h - 0.5;
  const int i0 = int(std::floor(x));
  const int j0 = int(std::floor(y));
  if (i0 < 0 || j0 < 0 || i0 + 1 >= g.N || j0 + 1 >= g.N)
    throw std::invalid_argument("sample_bilinear: point outside the interpolation range");
  const double tx = x - i0, ty = y - j0;
  return (1 - tx) * (1 - ty) * f(i0, j0) + tx * (1 - ty) * f(i0 + 1, j0) +
         (1 - tx) * ty * f(i0, j0 + 1) + tx * ty * f(i0 + 1, j0 + 1);
}

Field diff_x(const DiscGrid& g, const Field& f) {
  Field out = Field::Zero(g.N, g.N);
  const double inv = 1.0 / (2.0 * g.h);
  for (int j = 0; j < g.N; ++j)
    for (int i = 1; i + 1 < g.N; ++i) out(i, j) = (f(i + 1, j) - f(i - 1, j)) * inv;
  return out;
}

Field diff_y(const DiscGrid& g, const Field& f) {
  Field out = Field::Zero(g.N, g.N);
  const double inv = 1.0 / (2.0 * g.h);
  for (int j = 1; j + 1 < g.N; ++j)
    for (int i = 0; i < g.N; ++i) out(i, j) = (f(i, j + 1) - f(i, j - 1)) * inv;
  return out;
}

Eigen::VectorXcd boundary_samples(const DiscGrid& g, const Field& f, int M) {
  if (M < 4) throw std::invalid_argument("boundary_samples: need at least 4 angles");
  Eigen::VectorXcd out(M);
  const double r1 = 1.0 - 0.5 * g.h;
  const double r2 = 1.0 - 1.5 * g.h;
  const double dphi = 2.0 * std::numbers::pi / M;
  for (int m = 0; m < M; ++m) {
    const double phi = m * dphi;
    const cplx dir(std::cos(phi), std::sin(phi));
    const cplx v1 = sample_bilinear(g, f, r1 * dir);
    const cplx v2 = sample_bilinear(g, f, r2 * dir);
    // linear extrapolation in r from (r2, r1) to r = 1
    out[m] = v1 + (v1 - v2) * 0.5;
  }
  return out;
}

BoundaryVector analyze_boundary(const Eigen::VectorXcd& samples, int K_max) {
  const int M = int(samples.size());
  if (M <= 2 * K_max) throw std::invalid_argument("analyze_boundary: need M > 2*K_max samples");
  BoundaryVector c = BoundaryVector::Zero(2 * K_max + 1);
  const double dphi = 2.0 * std::numbers::pi / M;
  for (int k = -K_max; k <= K_max; ++k) {
    cplx acc = 0.0;
    for (int m = 0; m < M; ++m) {
      const double a = -k * m * dphi;
      acc += samples[m] * cplx(std::cos(a), std::sin(a));
    }
    c[k + K_max] = acc / double(M);
  }
  return c;
}

Eigen::VectorXcd synthesize_boundary(const BoundaryVector& coeffs, int M_angles) {
  const int K = (int(coeffs.size()) - 1) / 2;
  if (coeffs.size() != 2 * K + 1) throw std::invalid_argument("synthesize_boundary: bad coefficient count");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(M_angles);
  const double dphi = 2.0 * std::numbers::pi / M_angles;
  for (int m = 0; m < M_angles; ++m) {
    cplx acc = 0.0;
    for (int k = -K; k <= K; ++k) {
      const double a = k * m * dphi;
      acc += coeffs[k + K] * cplx(std::cos(a), std::sin(a));
    }
    out[m] = acc;
  }
  return out;
}

BoundaryVector trace(const DiscGrid& g, const Field& f, const BoundaryBasis& basis) {
  if (g.h > 0.1) throw std::invalid_argument("trace: grid too coarse (h > 0.1)");
  return analyze_boundary(boundary_samples(g, f, basis.M_angles), basis.K_max);
}

}  // namespace cgo2d
