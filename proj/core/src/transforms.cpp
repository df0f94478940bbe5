#include "cgo2d/transforms.hpp"

#include "cgo2d/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cgo2d {

RealField phase_quadratic(const DiscGrid& g, cplx z0) {
  RealField R(g.N, g.N);
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i) {
      const cplx w = g.Z(i, j) - z0;
      R(i, j) = 2.0 * (w * w).real();
    }
  return R;
}

Field phase_exponential(const DiscGrid& g, double n, cplx z0, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("phase_exponential: sign must be +-1");
  Field E(g.N, g.N);
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i) {
      const cplx w = g.Z(i, j) - z0;
      const double a = sign * n * 2.0 * (w * w).real();
      E(i, j) = cplx(std::cos(a), std::sin(a));
    }
  return E;
}

cplx CauchyOp::singular_cell_average(double h) {
  // 20x20 Gauss-Legendre per half-axis is symmetric, so the odd integrand
  // cancels to machine precision.
  constexpr int m = 20;
  static const double* nodes = [] {
    static double xw[2 * m];
    // Newton iteration for Legendre nodes.
    for (int i = 0; i < m; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= m; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        const double dp = m * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = m * (x * p1 - p0) / (x * x - 1.0);
      xw[i] = x;
      xw[m + i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return xw;
  }();
  cplx acc = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const cplx z(0.5 * h * nodes[a], 0.5 * h * nodes[b]);
      acc += nodes[m + a] * nodes[m + b] / (std::numbers::pi * z);
    }
  // quadrature over [-h/2,h/2]^2 divided by cell area: (h/2)^2 jacobian / h^2
  return acc * 0.25;
}

CauchyOp::CauchyOp(const DiscGrid& g) : N_(g.N) {
  const int n2 = 2 * N_;
  const double h = g.h;
  Field K(n2, n2), Kb(n2, n2);
  const cplx diag = singular_cell_average(h) * (h * h);
  for (int j = 0; j < n2; ++j) {
    const int oy = j < N_ ? j : j - n2;
    for (int i = 0; i < n2; ++i) {
      const int ox = i < N_ ? i : i - n2;
      if (ox == 0 && oy == 0) {
        K(i, j) = diag;
        Kb(i, j) = std::conj(diag);
        continue;
      }
      const cplx w(ox * h, oy * h);
      K(i, j) = h * h / (std::numbers::pi * w);
      Kb(i, j) = h * h / (std::numbers::pi * std::conj(w));
    }
  }
  const Fft2& fft = Fft2::get(n2);
  fft.forward(K);
  fft.forward(Kb);
  khat_ = std::move(K);
  kbhat_ = std::move(Kb);
}

Field CauchyOp::apply(const Field& f) const {
  if (f.rows() != N_ || f.cols() != N_) throw std::invalid_argument("CauchyOp: size mismatch");
  return crop_half(convolve_periodic(pad_double(f), khat_));
}

Field CauchyOp::apply_bar(const Field& f) const {
  if (f.rows() != N_ || f.cols() != N_) throw std::invalid_argument("CauchyOp: size mismatch");
  return crop_half(convolve_periodic(pad_double(f), kbhat_));
}

Field conjugated_cauchy(const CauchyOp& op, const DiscGrid& g, const Field& a, double n, cplx z0) {
  return op.apply(phase_exponential(g, n, z0, -1) * a);
}

Field stationary_phase(const DiscGrid& g, const Field& Q, double n) {
  if (n <= 0.0) throw std::invalid_argument("stationary_phase: n must be positive");
  const int n2 = 2 * g.N;
  const Eigen::ArrayXd xi = fft_frequencies(n2, g.h);
  Field symbol(n2, n2);
  const double inv8n = 1.0 / (8.0 * n);
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n2; ++i) {
      const double a = -(xi[i] * xi[i] - xi[j] * xi[j]) * inv8n;
      symbol(i, j) = cplx(std::cos(a), std::sin(a));
    }
  return crop_half(convolve_periodic(pad_double(Q), symbol));
}

Field dbar(const DiscGrid& g, const Field& f) {
  const Field gx = diff_x(g, f), gy = diff_y(g, f);
  return 0.5 * (gx + cplx(0.0, 1.0) * gy);
}

Field dholo(const DiscGrid& g, const Field& f) {
  const Field gx = diff_x(g, f), gy = diff_y(g, f);
  return 0.5 * (gx - cplx(0.0, 1.0) * gy);
}

double gaussian_holder_sup(double alpha, int samples) {
  if (samples <= 0) throw std::invalid_argument("gaussian_holder_sup: samples must be positive");
  // Halton sequence in (radius^2, angle): deterministic quasi-random cover of the 4-disc.
  auto halton = [](int index, int base) {
    double f = 1.0, r = 0.0;
    for (int i = index; i > 0; i /= base) {
      f /= base;
      r += f * (i % base);
    }
    return r;
  };
  double sup = 0.0;
  for (int s = 1; s <= samples; ++s) {
    const double rr = 4.0 * std::sqrt(halton(s, 2));
    const double th = 2.0 * std::numbers::pi * halton(s, 3);
    const double x1 = rr * std::cos(th), x2 = rr * std::sin(th);
    const double mod = std::sqrt(x1 * x1 + x2 * x2);
    if (mod == 0.0) continue;
    // xi^2 + conj(xi)^2 = 2 (x1^2 - x2^2)
    const double ph = -2.0 * (x1 * x1 - x2 * x2);
    const double num = std::abs(cplx(1.0, 0.0) - cplx(std::cos(ph), std::sin(ph)));
    sup = std::max(sup, num / std::pow(mod, alpha));
  }
  return sup;
}

double cauchy_pompeiu_residual(const DiscGrid& g, const CauchyOp& op, const Field& f,
                               const Field& dbar_f,
                               const std::function<cplx(double)>& boundary_value, int M_angles) {
  Field area = dbar_f;
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i)
      if (!g.mask(i, j)) area(i, j) = 0.0;
  const Field cpart = op.apply(area);

  std::vector<cplx> bv(M_angles), bz(M_angles);
  for (int m = 0; m < M_angles; ++m) {
    const double phi = 2.0 * std::numbers::pi * m / M_angles;
    bz[m] = cplx(std::cos(phi), std::sin(phi));
    bv[m] = boundary_value(phi);
  }

  const Mask inner = interior_mask(g, 2);
  double num = 0.0, den = 0.0;
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i) {
      if (!inner(i, j)) continue;
      cplx B = 0.0;
      for (int m = 0; m < M_angles; ++m) B += bv[m] * bz[m] / (bz[m] - g.Z(i, j));
      B /= double(M_angles);
      const cplx res = f(i, j) - (B + cpart(i, j));
      num += std::norm(res);
      den += std::norm(f(i, j));
    }
  if (den == 0.0) throw std::invalid_argument("cauchy_pompeiu_residual: zero field");
  return std::sqrt(num / den);
}

ConvResult convolve_fields(const DiscGrid& g, const Field& f, const Field& gfield) {
  const int n2 = 2 * g.N;
  const Fft2& fft = Fft2::get(n2);
  Field fa = pad_double(f);
  Field fb = pad_double(gfield);
  fft.forward(fa);
  fft.forward(fb);
  fa *= fb;
  fft.inverse(fa);
  fa *= g.cell_area / (double(n2) * double(n2));
  return ConvResult{std::move(fa), -2.0 * g.L + g.h, g.h};
}

}  // namespace cgo2d
