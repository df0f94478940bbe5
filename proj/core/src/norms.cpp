#include "cgo2d/norms.hpp"

#include "cgo2d/fft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cgo2d {

double lp_norm(const DiscGrid& g, const Field& f, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (int j = 0; j < g.N; ++j)
      for (int i = 0; i < g.N; ++i)
        if (g.mask(i, j)) m = std::max(m, std::abs(f(i, j)));
    return m;
  }
  double acc = 0.0;
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i)
      if (g.mask(i, j)) acc += std::pow(std::abs(f(i, j)), p);
  return std::pow(acc * g.cell_area, 1.0 / p);
}

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1,1].
constexpr int kGL = 16;
constexpr double kGLx[kGL] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
constexpr double kGLw[kGL] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

}  // namespace

double lorentz_norm_samples(std::vector<double> mags, double w, double p, double q) {
  if (p <= 1.0) throw std::invalid_argument("lorentz_norm: p must be > 1");
  if (q < 1.0) throw std::invalid_argument("lorentz_norm: q must be >= 1 or inf");
  if (mags.empty()) return 0.0;
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  const std::size_t m = mags.size();
  if (mags[0] == 0.0) return 0.0;

  if (std::isinf(q)) {
    // sup over t of t^{1/p} f**(t); f** is (S_i + f_i (t - t_i)) / t on each piece.
    double sup = 0.0, S = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double t0 = double(i) * w, t1 = double(i + 1) * w;
      const double fi = mags[i];
      const double c = S - fi * t0;  // f**(t) = (c + fi t)/t
      auto value = [&](double t) { return std::pow(t, 1.0 / p - 1.0) * (c + fi * t); };
      sup = std::max(sup, value(t1));
      if (i > 0) sup = std::max(sup, value(t0));
      if (fi > 0.0 && c > 0.0) {
        const double tc = c * (p - 1.0) / fi;  // interior critical point
        if (tc > t0 && tc < t1) sup = std::max(sup, value(tc));
      }
      S += fi * w;
    }
    return sup;
  }

  // First piece [0, w]: f** = f_0, integral f_0^q (p/q) w^{q/p}.
  double I = std::pow(mags[0], q) * (p / q) * std::pow(w, q / p);
  double S = mags[0] * w;
  for (std::size_t i = 1; i < m; ++i) {
    const double t0 = double(i) * w, t1 = double(i + 1) * w;
    const double fi = mags[i];
    const double c = S - fi * t0;
    const double mid = 0.5 * (t0 + t1), half = 0.5 * (t1 - t0);
    double piece = 0.0;
    for (int k = 0; k < kGL; ++k) {
      const double t = mid + half * kGLx[k];
      piece += kGLw[k] * std::pow(t, q / p - 1.0 - q) * std::pow(c + fi * t, q);
    }
    I += half * piece;
    S += fi * w;
  }
  return std::pow(I, 1.0 / q);
}

double lorentz_norm(const DiscGrid& g, const Field& f, double p, double q) {
  std::vector<double> mags;
  mags.reserve(std::size_t(g.inside_count));
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i)
      if (g.mask(i, j)) mags.push_back(std::abs(f(i, j)));
  return lorentz_norm_samples(std::move(mags), g.cell_area, p, q);
}

double sobolev_frac_norm(const DiscGrid& g, const Field& f, double alpha) {
  const int N = g.N;
  Field work = f;
  Fft2::get(N).forward(work);
  const Eigen::ArrayXd xi = fft_frequencies(N, g.h);
  double acc = 0.0;
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      const double w = std::pow(1.0 + xi[i] * xi[i] + xi[j] * xi[j], alpha);
      acc += w * std::norm(work(i, j));
    }
  // Parseval: sum |f|^2 h^2 = (h^2/N^2) sum |fhat|^2.
  return std::sqrt(acc) * g.h / double(N);
}

double w1p_norm(const DiscGrid& g, const Field& f, double p) {
  if (p < 1.0 || std::isinf(p)) throw std::invalid_argument("w1p_norm: p must be finite and >= 1");
  const Field gx = diff_x(g, f), gy = diff_y(g, f);
  double acc = 0.0;
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i)
      if (g.mask(i, j))
        acc += std::pow(std::abs(f(i, j)), p) + std::pow(std::abs(gx(i, j)), p) +
               std::pow(std::abs(gy(i, j)), p);
  return std::pow(acc * g.cell_area, 1.0 / p);
}

double boundary_sobolev_norm(const BoundaryVector& coeffs, double s) {
  const int K = (int(coeffs.size()) - 1) / 2;
  double acc = 0.0;
  for (int k = -K; k <= K; ++k)
    acc += std::pow(1.0 + double(k) * k, s) * std::norm(coeffs[k + K]);
  return std::sqrt(acc);
}

double dn_operator_norm(const Eigen::MatrixXcd& A) {
  const int n = int(A.rows());
  if (A.cols() != n || n % 2 == 0) throw std::invalid_argument("dn_operator_norm: matrix must be odd square");
  const int K = (n - 1) / 2;
  Eigen::VectorXd wi(n);
  for (int k = -K; k <= K; ++k) wi[k + K] = std::pow(1.0 + double(k) * k, -0.25);
  const Eigen::MatrixXcd B = wi.asDiagonal() * A * wi.asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B);
  return svd.singularValues()(0);
}

}  // namespace cgo2d
