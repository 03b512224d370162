#pragma once

#include <array>
#include <cstddef>

// Periodic Cartesian grid and the D2Q5/D2Q9 velocity sets, plus the
// time-step/grid-step coupling k = delta/lambda that keeps every population
// shift an exact lattice translation.

namespace kinwave {

enum class LatticeKind { d2q5, d2q9 };

// The ordered kinetic speeds c_zeta = lambda * dir[zeta].  Ordering is fixed:
// rest speed first, then the four axis directions counter-clockwise from +x,
// then (D2Q9) the four diagonals counter-clockwise from (+1,+1).  Each
// non-rest speed is the quarter-turn rotation of its predecessor within its
// ring, which is what the rotation-equivariant Maxwellian construction and
// the symmetry tests rely on.
struct VelocitySet {
  LatticeKind kind = LatticeKind::d2q5;
  int q = 5;             // number of populations (5 or 9)
  double lambda = 1.0;   // speed magnitude, length/time
  std::array<std::array<int, 2>, 9> dir{};

  std::array<double, 2> speed(int zeta) const {
    return {lambda * dir[zeta][0], lambda * dir[zeta][1]};
  }
};

VelocitySet make_velocity_set(LatticeKind kind, double lambda);

// Cell-centered periodic square grid on (-half_extent, half_extent)^2.
// Node (i, j) sits at (-half_extent + (i + 1/2) delta) in each coordinate;
// n per side, with n * delta == 2 * half_extent exactly and n a power of two
// so that delta-halving ladders land on exact grids.
struct Grid {
  int n = 0;
  double delta = 0.0;
  double half_extent = 0.0;

  static Grid make(double delta, double half_extent);

  int wrap(int i) const {
    i %= n;
    return i < 0 ? i + n : i;
  }
  double coord(int i) const { return -half_extent + (i + 0.5) * delta; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * n + i;
  }
  std::size_t size() const { return static_cast<std::size_t>(n) * n; }

  bool operator==(const Grid&) const = default;
};

// Uniform time grid: k = delta/lambda exactly (lattice compatibility); the
// step count is chosen by the caller, typically round(t_horizon/k), and the
// reached time n_steps * k is what solutions get compared at.
struct TimeGrid {
  double k = 0.0;
  long n_steps = 0;
  double t_final = 0.0;  // n_steps * k
};

TimeGrid make_time_grid(double delta, double lambda, double t_horizon);

struct NodeIndex {
  int i = 0;
  int j = 0;
  bool operator==(const NodeIndex&) const = default;
};

// Integer cell displacement of one transport step for speed c_zeta, i.e.
// k*c_zeta/delta componentwise.  Rejects (k, c_zeta, delta) triples whose
// displacement is not an integer number of cells.
std::array<int, 2> lattice_shift(const Grid& grid, std::array<double, 2> c_zeta,
                                 double k);

// Destination of one transport step from ij along c_zeta, periodically
// wrapped.  For every c_zeta this map is a bijection on the index set:
// streaming is a permutation of node values.
NodeIndex shift_index(const Grid& grid, NodeIndex ij,
                      std::array<double, 2> c_zeta, double k);

}  // namespace kinwave
