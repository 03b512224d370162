#include "kinwave/field.hpp"

#include <algorithm>
#include <cmath>

namespace kinwave {

AcousticState AcousticState::zeros(const Grid& grid) {
  AcousticState s;
  s.grid = grid;
  s.data.assign(3 * grid.size(), 0.0);
  return s;
}

AcousticState gaussian_pressure(const Grid& grid, double kappa, double mu) {
  AcousticState s = AcousticState::zeros(grid);
  for (int j = 0; j < grid.n; ++j) {
    const double y = grid.coord(j);
    for (int i = 0; i < grid.n; ++i) {
      const double x = grid.coord(i);
      s.p(i, j) = kappa * std::exp(-mu * (x * x + y * y));
    }
  }
  return s;
}

double max_abs(const AcousticState& state) {
  double m = 0.0;
  for (double v : state.data) m = std::max(m, std::abs(v));
  return m;
}

AcousticState rotate_quarter(const AcousticState& state) {
  const Grid& g = state.grid;
  AcousticState out = AcousticState::zeros(g);
  for (int j = 0; j < g.n; ++j) {
    for (int i = 0; i < g.n; ++i) {
      const int ri = g.n - 1 - j;  // cell centre of (i,j) lands on (ri, rj)
      const int rj = i;
      out.v(ri, rj) = -state.w(i, j);
      out.w(ri, rj) = state.v(i, j);
      out.p(ri, rj) = state.p(i, j);
    }
  }
  return out;
}

}  // namespace kinwave
