#pragma once

#include <Eigen/Dense>
#include <vector>

#include "kinwave/field.hpp"
#include "kinwave/lattice.hpp"
#include "kinwave/maxwellian.hpp"

// The lattice-Boltzmann time stepper.  One step is relaxation toward the
// Maxwellian equilibrium followed by exact lattice transport:
//   f_zeta^{n+1}(a + k c_zeta) = (1-omega) f_zeta^n(a)
//                              + omega Omega_zeta (M0 f^n)(a),
// with k = delta/lambda so every shift is one cell.  omega = 1 is the plain
// projection-transport splitting; omega = 2 the over-relaxed second-order
// variant.

namespace kinwave {

struct KineticField {
  Grid grid;
  VelocitySet vset;
  long time_index = 0;
  // One plane of 3 * n * n doubles per population, node-major (v,w,p-like
  // component triple per node).
  std::vector<std::vector<double>> f;

  // Scratch owned by the field so repeated stepping allocates nothing: the
  // write buffer of the gather pass and the zeroth-moment plane.
  std::vector<std::vector<double>> back;
  std::vector<double> m0;
};

// f0_zeta = Omega_zeta q0 at every node, the equilibrium start; consequently
// M0 f0 = q0 exactly (up to round-off) and every population starts (and by
// the update form stays) in the range of its Omega_zeta.
KineticField init_field(const MaxwellianSet& ms, const AcousticState& q0);

struct Moments {
  AcousticState m0, m1, m2;  // sum f, sum c^1 f, sum c^2 f
};

Moments moments(const KineticField& field);
AcousticState zeroth_moment(const KineticField& field);
double max_abs_zeroth_moment(const KineticField& field);

// Advance one step in place.  Deterministic by construction: the update is a
// gather (each output node of each population written exactly once from a
// single source node), so any node-parallel execution is bitwise identical
// to serial.
void step(KineticField& field, const MaxwellianSet& ms, double omega);

// Total kinetic entropy delta^2 sum_nodes sum_zeta f^T pinv(Omega_zeta) f / 2,
// accumulated in a fixed order with compensated summation so the value is
// reproducible and its round-off stays at working precision regardless of
// grid size.  weights = entropy_weights(ms).
double total_entropy(const KineticField& field,
                     const std::vector<Eigen::Matrix3d>& weights);

struct RunOptions {
  bool record_entropy = false;
  bool monitor_blow_up = true;
  double blow_up_factor = 1e6;  // on max |M0 f| relative to the initial state
};

struct RunResult {
  AcousticState state;          // M0 f at the reached time
  std::vector<double> entropy;  // per step incl. initial, when recorded
  bool blew_up = false;
  long steps_done = 0;
};

// Repeated stepping from the equilibrium init of q0, with the blow-up
// monitor aborting once max |M0 f| exceeds blow_up_factor times its initial
// value (the partial trace is returned).
RunResult run(const AcousticState& q0, const MaxwellianSet& ms, double omega,
              long n_steps, const RunOptions& opts = {});

}  // namespace kinwave
