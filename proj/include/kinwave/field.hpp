#pragma once

#include <vector>

#include "kinwave/lattice.hpp"

// Per-node acoustic states q = (v, w, p) on a periodic grid.  These are the
// symmetrized variables of the 2D linear acoustics system
//   dt q + A1 d1 q + A2 d2 q = 0,
// and one 3-component block of the elastodynamics system (which is two such
// blocks evolving independently).

namespace kinwave {

struct AcousticState {
  Grid grid;
  std::vector<double> data;  // 3 per node: v, w, p

  static AcousticState zeros(const Grid& grid);

  double& v(int i, int j) { return data[3 * grid.index(i, j)]; }
  double& w(int i, int j) { return data[3 * grid.index(i, j) + 1]; }
  double& p(int i, int j) { return data[3 * grid.index(i, j) + 2]; }
  double v(int i, int j) const { return data[3 * grid.index(i, j)]; }
  double w(int i, int j) const { return data[3 * grid.index(i, j) + 1]; }
  double p(int i, int j) const { return data[3 * grid.index(i, j) + 2]; }
};

// p = kappa * exp(-mu r^2) sampled at cell centers, v = w = 0; the standing
// start (zero initial velocity) used by all experiments.
AcousticState gaussian_pressure(const Grid& grid, double kappa, double mu);

// max |component| over the whole field.
double max_abs(const AcousticState& state);

// Quarter-turn rotation of a state: node (i,j) -> (n-1-j, i) together with
// the component rotation (v,w,p) -> (-w,v,p).  Used by the symmetry tests;
// exact (sign flips and copies only, no rounding).
AcousticState rotate_quarter(const AcousticState& state);

}  // namespace kinwave
