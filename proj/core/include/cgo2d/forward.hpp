#pragma once

#include "cgo2d/grid.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <nlohmann/json.hpp>

#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

namespace cgo2d {

class WellPosednessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shortley-Weller 5-point solver for Delta u + q u = 0 on the unit disc with
// Dirichlet data g(angle). Boundary-cut arms use the exact circle intersection
// (coefficients 2/(s_i (s_i + s_opp) h^2)); the returned field is ghost-filled
// with g(arg z) on exterior nodes near the circle so centered gradients and
// boundary traces are well defined. The factorization is reused across solves.
class DirichletSolver {
 public:
  DirichletSolver(const DiscGrid& g, const Field& q);

  Field solve(const std::function<cplx(double)>& boundary_value) const;
  Field solve(const BoundaryVector& coeffs) const;

  double condition_estimate() const { return cond_; }

 private:
  const DiscGrid* grid_;
  Eigen::Index nun_ = 0;
  std::vector<std::pair<int, int>> cells_;  // masked (i,j) in column-major order
  struct BoundaryArm {
    int row;
    double angle;
    double coeff;
  };
  std::vector<BoundaryArm> bc_;
  std::vector<std::pair<int, int>> ghost_;  // exterior nodes within 3h of the circle
  Eigen::SparseMatrix<cplx> A_;
  Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu_;
  double cond_ = 0.0;
};

// DN-difference-ready matrix of boundary-mode responses:
// A_{jk} = (1/2pi) integrate(-grad u_k . grad v_{-j} + q u_k v_{-j}),
// u_k solving the Schroedinger problem with trace e^{ik phi} and v_j the
// discrete harmonic extension of e^{ij phi}. Stored with row index j + K_max,
// column index k + K_max.
struct DNMatrix {
  int K_max = 0;
  int N = 0;
  double L = 0.0;
  Eigen::MatrixXcd A;
};

DNMatrix dn_map(const DiscGrid& g, const Field& q, const BoundaryBasis& basis);
// Variant reusing prepared solvers (the q = 0 harmonic solver is shared by sweeps).
DNMatrix dn_map(const DiscGrid& g, const Field& q, const BoundaryBasis& basis,
                const DirichletSolver& solver_q, const DirichletSolver& solver_0);

// Entry-wise difference with basis compatibility check.
DNMatrix dn_difference(const DNMatrix& A1, const DNMatrix& A2);

// Bilinear pairing 2*pi * sum_{j,k} dA_{jk} t1_k t2_{-j}: evaluates
// ((Lambda_1 - Lambda_2) t1, t2) for coefficient vectors on the same basis.
cplx alessandrini_pairing(const DNMatrix& dA, const BoundaryVector& t1, const BoundaryVector& t2);

// Documented JSON layout: {"K_max": K, "grid": {"N": N, "L": L},
//  "rows": [ ... 2K+1 rows, each 2K+1 entries [re, im] ... ]} with the row
// index j and column index k both running -K..K in order.
void to_json(nlohmann::json& j, const DNMatrix& m);
void from_json(const nlohmann::json& j, DNMatrix& m);

}  // namespace cgo2d
