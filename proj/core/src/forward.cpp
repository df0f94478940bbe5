#include "cgo2d/forward.hpp"

#include <cmath>
#include <numbers>

namespace cgo2d {

DirichletSolver::DirichletSolver(const DiscGrid& g, const Field& q) : grid_(&g) {
  const int N = g.N;
  const double h = g.h, h2 = h * h;
  Eigen::ArrayXXi idx = Eigen::ArrayXXi::Constant(N, N, -1);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i)
      if (g.mask(i, j)) {
        idx(i, j) = int(cells_.size());
        cells_.emplace_back(i, j);
      }
  nun_ = Eigen::Index(cells_.size());

  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(5 * cells_.size());
  const int dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (int r = 0; r < int(cells_.size()); ++r) {
    const auto [i, j] = cells_[r];
    const double x = g.X(i, j), y = g.Y(i, j);
    double s[4];
    int nbr[4];
    double ang[4];
    for (int d = 0; d < 4; ++d) {
      const int ni = i + dirs[d][0], nj = j + dirs[d][1];
      if (ni >= 0 && ni < N && nj >= 0 && nj < N && g.mask(ni, nj)) {
        s[d] = 1.0;
        nbr[d] = idx(ni, nj);
        ang[d] = 0.0;
      } else {
        // |(x + s h dx, y + s h dy)| = 1 along the arm
        const double B = 2.0 * h * (x * dirs[d][0] + y * dirs[d][1]);
        const double A = h2;
        const double C = x * x + y * y - 1.0;
        const double disc = B * B - 4.0 * A * C;
        double sv = (-B + std::sqrt(std::max(disc, 0.0))) / (2.0 * A);
        sv = std::min(std::max(sv, 1e-6), 1.0);
        s[d] = sv;
        nbr[d] = -1;
        ang[d] = std::atan2(y + sv * h * dirs[d][1], x + sv * h * dirs[d][0]);
      }
    }
    const double cP = -2.0 / (s[0] * s[1] * h2) - 2.0 / (s[2] * s[3] * h2);
    trips.emplace_back(r, r, cP + q(i, j));
    for (int d = 0; d < 4; ++d) {
      const int opp = d ^ 1;
      const double c = 2.0 / (s[d] * (s[d] + s[opp]) * h2);
      if (nbr[d] >= 0)
        trips.emplace_back(r, nbr[d], cplx(c, 0.0));
      else
        bc_.push_back(BoundaryArm{r, ang[d], c});
    }
  }
  A_.resize(nun_, nun_);
  A_.setFromTriplets(trips.begin(), trips.end());
  A_.makeCompressed();
  lu_.compute(A_);
  if (lu_.info() != Eigen::Success)
    throw WellPosednessError("DirichletSolver: factorization failed");

  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      if (g.mask(i, j)) continue;
      const double rad = std::abs(g.Z(i, j));
      if (rad < 1.0 + 3.0 * h) ghost_.emplace_back(i, j);
    }

  // Condition estimate by power iteration on A^H A and (A^H A)^{-1}, reusing
  // the factorization for the inverse sweeps.
  Eigen::VectorXcd v(nun_);
  for (Eigen::Index k = 0; k < nun_; ++k) v[k] = cplx(1.0 + 0.25 * std::sin(double(k)), 0.1);
  v.normalize();
  double smax = 0.0;
  for (int it = 0; it < 30; ++it) {
    Eigen::VectorXcd w = A_ * v;
    Eigen::VectorXcd u = A_.adjoint() * w;
    smax = std::sqrt(u.norm());
    v = u / u.norm();
  }
  for (Eigen::Index k = 0; k < nun_; ++k) v[k] = cplx(1.0, 0.2 * std::cos(double(k)));
  v.normalize();
  double sinv = 0.0;
  for (int it = 0; it < 30; ++it) {
    Eigen::VectorXcd w = lu_.solve(v);
    Eigen::VectorXcd u = lu_.adjoint().solve(w);
    sinv = std::sqrt(u.norm());
    v = u / u.norm();
  }
  cond_ = smax * sinv;
  if (!std::isfinite(cond_) || cond_ > 1e12)
    throw WellPosednessError("DirichletSolver: condition estimate exceeds 1e12");
}

Field DirichletSolver::solve(const std::function<cplx(double)>& boundary_value) const {
  const DiscGrid& g = *grid_;
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(nun_);
  for (const auto& arm : bc_) b[arm.row] -= arm.coeff * boundary_value(arm.angle);
  const Eigen::VectorXcd u = lu_.solve(b);
  Field out = Field::Zero(g.N, g.N);
  for (int r = 0; r < int(cells_.size()); ++r) out(cells_[r].first, cells_[r].second) = u[r];
  for (const auto& [i, j] : ghost_)
    out(i, j) = boundary_value(std::atan2(g.Y(i, j), g.X(i, j)));
  return out;
}

Field DirichletSolver::solve(const BoundaryVector& coeffs) const {
  const int K = (int(coeffs.size()) - 1) / 2;
  return solve([&](double ang) {
    cplx acc = 0.0;
    for (int k = -K; k <= K; ++k) {
      const double a = k * ang;
      acc += coeffs[k + K] * cplx(std::cos(a), std::sin(a));
    }
    return acc;
  });
}

DNMatrix dn_map(const DiscGrid& g, const Field& q, const BoundaryBasis& basis) {
  const bool zero_q = (q.abs() == 0.0).all();
  DirichletSolver solver_q(g, q);
  if (zero_q) return dn_map(g, q, basis, solver_q, solver_q);
  DirichletSolver solver_0(g, Field::Zero(g.N, g.N));
  return dn_map(g, q, basis, solver_q, solver_0);
}

DNMatrix dn_map(const DiscGrid& g, const Field& q, const BoundaryBasis& basis,
                const DirichletSolver& solver_q, const DirichletSolver& solver_0) {
  const int K = basis.K_max;
  const int n = 2 * K + 1;
  const Eigen::Index C = g.inside_count;
  const bool same = &solver_q == &solver_0;

  // Masked value/gradient stacks, one row per mode.
  Eigen::MatrixXcd U(n, C), Ux(n, C), Uy(n, C), V(n, C), Vx(n, C), Vy(n, C);
  for (int k = -K; k <= K; ++k) {
    auto bval = [k](double ang) {
      const double a = k * ang;
      return cplx(std::cos(a), std::sin(a));
    };
    const Field u = solver_q.solve(bval);
    U.row(k + K) = masked_values(g, u).transpose();
    Ux.row(k + K) = masked_values(g, diff_x(g, u)).transpose();
    Uy.row(k + K) = masked_values(g, diff_y(g, u)).transpose();
    if (same) {
      V.row(k + K) = U.row(k + K);
      Vx.row(k + K) = Ux.row(k + K);
      Vy.row(k + K) = Uy.row(k + K);
    } else {
      const Field v = solver_0.solve(bval);
      V.row(k + K) = masked_values(g, v).transpose();
      Vx.row(k + K) = masked_values(g, diff_x(g, v)).transpose();
      Vy.row(k + K) = masked_values(g, diff_y(g, v)).transpose();
    }
  }
  const Eigen::VectorXcd qw = masked_values(g, q) * g.cell_area;
  const double scale = g.cell_area / (2.0 * std::numbers::pi);

  // Row j uses v_{-j}: reverse the V-side row order.
  Eigen::MatrixXcd Vr(n, C), Vxr(n, C), Vyr(n, C);
  for (int r = 0; r < n; ++r) {
    Vr.row(r) = V.row(n - 1 - r);
    Vxr.row(r) = Vx.row(n - 1 - r);
    Vyr.row(r) = Vy.row(n - 1 - r);
  }

  DNMatrix out;
  out.K_max = K;
  out.N = g.N;
  out.L = g.L;
  out.A = -(Vxr * Ux.transpose() + Vyr * Uy.transpose()) * scale +
          Vr * qw.asDiagonal() * U.transpose() / (2.0 * std::numbers::pi);
  return out;
}

DNMatrix dn_difference(const DNMatrix& A1, const DNMatrix& A2) {
  if (A1.K_max != A2.K_max || A1.N != A2.N || A1.L != A2.L)
    throw std::invalid_argument("dn_difference: basis mismatch");
  DNMatrix out = A1;
  out.A -= A2.A;
  return out;
}

cplx alessandrini_pairing(const DNMatrix& dA, const BoundaryVector& t1, const BoundaryVector& t2) {
  const int n = 2 * dA.K_max + 1;
  if (t1.size() != n || t2.size() != n)
    throw std::invalid_argument("alessandrini_pairing: basis mismatch");
  cplx acc = 0.0;
  for (int rj = 0; rj < n; ++rj) {
    // row rj corresponds to j = rj - K; pairs with t2 coefficient of -j
    const cplx t2mj = t2[n - 1 - rj];
    cplx rowdot = 0.0;
    for (int ck = 0; ck < n; ++ck) rowdot += dA.A(rj, ck) * t1[ck];
    acc += t2mj * rowdot;
  }
  return 2.0 * std::numbers::pi * acc;
}

void to_json(nlohmann::json& j, const DNMatrix& m) {
  const int n = 2 * m.K_max + 1;
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < n; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < n; ++c)
      row.push_back(nlohmann::json::array({m.A(r, c).real(), m.A(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  j = nlohmann::json{{"K_max", m.K_max},
                     {"grid", {{"N", m.N}, {"L", m.L}}},
                     {"rows", std::move(rows)}};
}

void from_json(const nlohmann::json& j, DNMatrix& m) {
  m.K_max = j.at("K_max").get<int>();
  m.N = j.at("grid").at("N").get<int>();
  m.L = j.at("grid").at("L").get<double>();
  const int n = 2 * m.K_max + 1;
  m.A.resize(n, n);
  const auto& rows = j.at("rows");
  if (int(rows.size()) != n) throw std::invalid_argument("DNMatrix: bad row count");
  for (int r = 0; r < n; ++r) {
    const auto& row = rows[r];
    if (int(row.size()) != n) throw std::invalid_argument("DNMatrix: bad column count");
    for (int c = 0; c < n; ++c)
      m.A(r, c) = cplx(row[c][0].get<double>(), row[c][1].get<double>());
  }
}

}  // namespace cgo2d
