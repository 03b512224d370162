#pragma once

#include <vector>

#include "kinwave/field.hpp"
#include "kinwave/lattice.hpp"

// Reference discretizations of the same acoustic system on the same periodic
// cell-centred grid: the staggered leapfrog scheme (second order), and
// cell-centred finite-volume upwind schemes of first and second order.  All
// three are parameterized by the Courant number nu = c k / delta.

namespace kinwave {

// Staggered layout: p lives at cell centres at integer times, v at x-faces
// (i+1/2, j) and w at y-faces (i, j+1/2) at half-integer times.  All three
// arrays have n*n entries, indexed by the cell whose east (resp. north) face
// carries the value.
struct StaggeredState {
  Grid grid;
  std::vector<double> p, v, w;

  static StaggeredState zeros(const Grid& grid);
};

// Start from cell-centred data at t = 0: p is copied, and the face
// velocities are set to the face average of the cell velocities advanced to
// t = k/2 by a half step of the p-gradient update,
//   v^{1/2}_{i+1/2,j} = (v_{i,j} + v_{i+1,j})/2 + (nu/2)(p_{i+1,j} - p_{i,j})
// and likewise for w.  For the zero-velocity starts of interest this is just
// the half-step term, which is what keeps the leapfrog second order.
StaggeredState yee_init(const AcousticState& q0, double courant);

// One leapfrog step: pressure first from the divergence of the half-step
// faces, then the faces from the fresh pressure.
//   p^{n+1}_{i,j} = p^n_{i,j} + nu (v^{n+1/2}_{i+1/2,j} - v^{n+1/2}_{i-1/2,j}
//                                 + w^{n+1/2}_{i,j+1/2} - w^{n+1/2}_{i,j-1/2})
//   v^{n+3/2}_{i+1/2,j} = v^{n+1/2}_{i+1/2,j} + nu (p^{n+1}_{i+1,j} - p^{n+1}_{i,j})
//   w^{n+3/2}_{i,j+1/2} = w^{n+1/2}_{i,j+1/2} + nu (p^{n+1}_{i,j+1} - p^{n+1}_{i,j})
void yee_step(StaggeredState& state, double courant);

// Cell-centred view of a staggered state for error measurement: p as stored,
// v and w averaged from the two adjacent faces.
AcousticState collocate(const StaggeredState& state);

// First-order upwind finite volumes, all three components cell-centred:
//   v += (nu/2) (p_E - p_W + v_E - 2 v + v_W)
//   w += (nu/2) (p_N - p_S + w_N - 2 w + w_S)
//   p += (nu/2) (v_E - v_W + w_N - w_S + p_E + p_W + p_N + p_S - 4 p)
// (central gradient plus the upwind dissipation of |A_1|, |A_2|).
AcousticState fv1_step(const AcousticState& state, double courant);

// Per-node slopes of the least-squares linear reconstruction over the
// von Neumann neighbourhood: c1 = (q_E - q_W)/2, c2 = (q_N - q_S)/2 for each
// of the three components (the normal equations of the 4-point stencil
// reduce to these central differences exactly).
struct Reconstruction {
  Grid grid;
  std::vector<double> c1, c2;  // 3 components per node, node-major

  static Reconstruction zeros(const Grid& grid);
};

Reconstruction lsq_reconstruct(const AcousticState& state);

// One forward-Euler increment (k/delta times the flux divergence) of the
// reconstructed upwind scheme: face traces q_L = q + c/2 and q_R = q_E -
// c_E/2 from the given slopes, flux F = (1/2) A (q_L + q_R) -
// (1/2)|A| (q_R - q_L) per face, differenced per cell.  With zero slopes,
// state + increment reproduces fv1_step.
AcousticState upwind_increment(const AcousticState& state,
                               const Reconstruction& rec, double courant);

// Second-order finite volumes: least-squares slopes, upwind face fluxes
// from the one-sided traces, and Heun (explicit trapezoid) time
// integration of the semi-discrete system.
AcousticState fv2_step(const AcousticState& state, double courant);

}  // namespace kinwave
