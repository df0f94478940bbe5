#pragma once

#include <cgo2d/grid.hpp>
#include <cgo2d/transforms.hpp>

#include <cmath>

namespace testutil {

// Shared fixtures: grids and Cauchy operators are expensive enough to build
// once per process and reuse across test cases.
inline const cgo2d::DiscGrid& grid256() {
  static const cgo2d::DiscGrid g = cgo2d::build_grid(256, 2.0);
  return g;
}

inline const cgo2d::DiscGrid& grid128() {
  static const cgo2d::DiscGrid g = cgo2d::build_grid(128, 2.0);
  return g;
}

inline const cgo2d::CauchyOp& cauchy256() {
  static const cgo2d::CauchyOp op(grid256());
  return op;
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

inline cgo2d::Field masked(const cgo2d::DiscGrid& g, const cgo2d::Field& f) {
  cgo2d::Field out = f;
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i)
      if (!g.mask(i, j)) out(i, j) = 0.0;
  return out;
}

inline double masked_sup_diff(const cgo2d::DiscGrid& g, const cgo2d::Field& a,
                              const cgo2d::Field& b) {
  double worst = 0.0;
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i)
      if (g.mask(i, j)) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

}  // namespace testutil
