#include "kinwave/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kinwave {

VelocitySet make_velocity_set(LatticeKind kind, double lambda) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("velocity set needs lambda > 0, got " +
                                std::to_string(lambda));
  }
  VelocitySet vs;
  vs.kind = kind;
  vs.q = kind == LatticeKind::d2q5 ? 5 : 9;
  vs.lambda = lambda;
  vs.dir = {{{0, 0},
             {1, 0},
             {0, 1},
             {-1, 0},
             {0, -1},
             {1, 1},
             {-1, 1},
             {-1, -1},
             {1, -1}}};
  return vs;
}

Grid Grid::make(double delta, double half_extent) {
  if (!(delta > 0.0) || !(half_extent > 0.0)) {
    throw std::invalid_argument("grid needs delta > 0 and half_extent > 0");
  }
  const long side = std::lround(2.0 * half_extent / delta);
  if (side < 1 || side > (1L << 24) ||
      static_cast<double>(side) * delta != 2.0 * half_extent) {
    throw std::invalid_argument(
        "delta = " + std::to_string(delta) +
        " does not divide the domain width exactly");
  }
  // Power-of-two sides keep the delta-halving refinement ladders on exact
  // nested grids.
  if ((side & (side - 1)) != 0) {
    throw std::invalid_argument("grid side " + std::to_string(side) +
                                " is not a power of two");
  }
  Grid g;
  g.n = static_cast<int>(side);
  g.delta = delta;
  g.half_extent = half_extent;
  return g;
}

TimeGrid make_time_grid(double delta, double lambda, double t_horizon) {
  if (!(delta > 0.0) || !(lambda > 0.0) || !(t_horizon > 0.0)) {
    throw std::invalid_argument("time grid needs positive delta, lambda, t");
  }
  TimeGrid tg;
  tg.k = delta / lambda;
  tg.n_steps = std::max(1L, std::lround(t_horizon / tg.k));
  tg.t_final = static_cast<double>(tg.n_steps) * tg.k;
  return tg;
}

std::array<int, 2> lattice_shift(const Grid& grid,
                                 std::array<double, 2> c_zeta, double k) {
  std::array<int, 2> shift{};
  for (int a = 0; a < 2; ++a) {
    const double cells = c_zeta[a] * k / grid.delta;
    const double nearest = std::nearbyint(cells);
    if (std::abs(cells - nearest) > 1e-9 * std::max(1.0, std::abs(cells))) {
      throw std::invalid_argument(
          "time step moves speed component " + std::to_string(c_zeta[a]) +
          " by " + std::to_string(cells) + " cells; need an integer");
    }
    shift[a] = static_cast<int>(nearest);
  }
  return shift;
}

NodeIndex shift_index(const Grid& grid, NodeIndex ij,
                      std::array<double, 2> c_zeta, double k) {
  const std::array<int, 2> s = lattice_shift(grid, c_zeta, k);
  return {grid.wrap(ij.i + s[0]), grid.wrap(ij.j + s[1])};
}

}  // namespace kinwave
