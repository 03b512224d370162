#include "kinwave/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kinwave {

namespace {

void require_compatible(const KineticField& field, const MaxwellianSet& ms) {
  if (static_cast<int>(ms.omegas.size()) != field.vset.q ||
      ms.vset.q != field.vset.q || ms.vset.lambda != field.vset.lambda) {
    throw std::invalid_argument(
        "Maxwellian set and kinetic field use different velocity sets");
  }
}

}  // namespace

KineticField init_field(const MaxwellianSet& ms, const AcousticState& q0) {
  if (q0.data.size() != 3 * q0.grid.size()) {
    throw std::invalid_argument("initial state has wrong storage size");
  }
  KineticField kf;
  kf.grid = q0.grid;
  kf.vset = ms.vset;
  const std::size_t plane = 3 * kf.grid.size();
  kf.f.assign(ms.vset.q, std::vector<double>(plane, 0.0));
  kf.back = kf.f;
  kf.m0.assign(plane, 0.0);
  for (int zeta = 0; zeta < ms.vset.q; ++zeta) {
    const Eigen::Matrix3d& o = ms.omegas[zeta];
    std::vector<double>& dst = kf.f[zeta];
    for (std::size_t node = 0; node < kf.grid.size(); ++node) {
      const double* q = &q0.data[3 * node];
      double* out = &dst[3 * node];
      out[0] = o(0, 0) * q[0] + o(0, 1) * q[1] + o(0, 2) * q[2];
      out[1] = o(1, 0) * q[0] + o(1, 1) * q[1] + o(1, 2) * q[2];
      out[2] = o(2, 0) * q[0] + o(2, 1) * q[1] + o(2, 2) * q[2];
    }
  }
  return kf;
}

AcousticState zeroth_moment(const KineticField& field) {
  AcousticState m0 = AcousticState::zeros(field.grid);
  for (int zeta = 0; zeta < field.vset.q; ++zeta) {
    const std::vector<double>& plane = field.f[zeta];
    for (std::size_t idx = 0; idx < m0.data.size(); ++idx) {
      m0.data[idx] += plane[idx];
    }
  }
  return m0;
}

Moments moments(const KineticField& field) {
  Moments mom{AcousticState::zeros(field.grid), AcousticState::zeros(field.grid),
              AcousticState::zeros(field.grid)};
  for (int zeta = 0; zeta < field.vset.q; ++zeta) {
    const std::array<double, 2> cz = field.vset.speed(zeta);
    const std::vector<double>& plane = field.f[zeta];
    for (std::size_t idx = 0; idx < plane.size(); ++idx) {
      mom.m0.data[idx] += plane[idx];
      mom.m1.data[idx] += cz[0] * plane[idx];
      mom.m2.data[idx] += cz[1] * plane[idx];
    }
  }
  return mom;
}

double max_abs_zeroth_moment(const KineticField& field) {
  double m = 0.0;
  const std::size_t plane = 3 * field.grid.size();
  for (std::size_t idx = 0; idx < plane; ++idx) {
    double s = 0.0;
    for (int zeta = 0; zeta < field.vset.q; ++zeta) s += field.f[zeta][idx];
    m = std::max(m, std::abs(s));
  }
  return m;
}

void step(KineticField& field, const MaxwellianSet& ms, double omega) {
  require_compatible(field, ms);
  const int n = field.grid.n;

  // Pass 1: zeroth-moment plane at every node.
  std::fill(field.m0.begin(), field.m0.end(), 0.0);
  for (int zeta = 0; zeta < field.vset.q; ++zeta) {
    const std::vector<double>& plane = field.f[zeta];
    for (std::size_t idx = 0; idx < field.m0.size(); ++idx) {
      field.m0[idx] += plane[idx];
    }
  }

  // Pass 2, per population: relax toward the Maxwellian of the moment and
  // stream in the same sweep.  Output-indexed gather (source node one cell
  // upstream, periodically wrapped): every output is written exactly once,
  // so any node-parallel split of the loop is bitwise identical to serial.
  const double keep = 1.0 - omega;
  for (int zeta = 0; zeta < field.vset.q; ++zeta) {
    const int di = field.vset.dir[zeta][0];
    const int dj = field.vset.dir[zeta][1];
    const Eigen::Matrix3d& om = ms.omegas[zeta];
    const double o00 = om(0, 0), o01 = om(0, 1), o02 = om(0, 2);
    const double o10 = om(1, 0), o11 = om(1, 1), o12 = om(1, 2);
    const double o20 = om(2, 0), o21 = om(2, 1), o22 = om(2, 2);
    const std::vector<double>& src = field.f[zeta];
    std::vector<double>& dst = field.back[zeta];
    for (int j = 0; j < n; ++j) {
      int js = j - dj;
      if (js < 0) js += n;
      if (js >= n) js -= n;
      const std::size_t dst_row = 3 * field.grid.index(0, j);
      const std::size_t src_row = 3 * field.grid.index(0, js);
      for (int i = 0; i < n; ++i) {
        int is = i - di;
        if (is < 0) is += n;
        if (is >= n) is -= n;
        const double* fs = &src[src_row + 3 * is];
        const double* m = &field.m0[src_row + 3 * is];
        double* out = &dst[dst_row + 3 * i];
        out[0] = keep * fs[0] + omega * (o00 * m[0] + o01 * m[1] + o02 * m[2]);
        out[1] = keep * fs[1] + omega * (o10 * m[0] + o11 * m[1] + o12 * m[2]);
        out[2] = keep * fs[2] + omega * (o20 * m[0] + o21 * m[1] + o22 * m[2]);
      }
    }
  }
  field.f.swap(field.back);
  ++field.time_index;
}

double total_entropy(const KineticField& field,
                     const std::vector<Eigen::Matrix3d>& weights) {
  if (static_cast<int>(weights.size()) != field.vset.q) {
    throw std::invalid_argument("one entropy weight per population required");
  }
  // Node-major, population-minor accumulation in a fixed order; compensated
  // summation keeps the round-off at working precision on any grid size.
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t node = 0; node < field.grid.size(); ++node) {
    for (int zeta = 0; zeta < field.vset.q; ++zeta) {
      const double* f = &field.f[zeta][3 * node];
      const Eigen::Matrix3d& p = weights[zeta];
      const double p0 = p(0, 0) * f[0] + p(0, 1) * f[1] + p(0, 2) * f[2];
      const double p1 = p(1, 0) * f[0] + p(1, 1) * f[1] + p(1, 2) * f[2];
      const double p2 = p(2, 0) * f[0] + p(2, 1) * f[1] + p(2, 2) * f[2];
      const double h = 0.5 * (f[0] * p0 + f[1] * p1 + f[2] * p2);
      const double t = sum + h;
      if (std::abs(sum) >= std::abs(h)) {
        comp += (sum - t) + h;
      } else {
        comp += (h - t) + sum;
      }
      sum = t;
    }
  }
  return field.grid.delta * field.grid.delta * (sum + comp);
}

RunResult run(const AcousticState& q0, const MaxwellianSet& ms, double omega,
              long n_steps, const RunOptions& opts) {
  if (n_steps < 0) {
    throw std::invalid_argument("run needs n_steps >= 0");
  }
  KineticField kf = init_field(ms, q0);
  RunResult rr;

  std::vector<Eigen::Matrix3d> weights;
  if (opts.record_entropy) {
    weights = ms.pinv_omegas.empty() ? entropy_weights(ms) : ms.pinv_omegas;
    rr.entropy.push_back(total_entropy(kf, weights));
  }
  const double threshold = opts.blow_up_factor * max_abs_zeroth_moment(kf);

  for (long s = 0; s < n_steps; ++s) {
    step(kf, ms, omega);
    ++rr.steps_done;
    if (opts.record_entropy) {
      rr.entropy.push_back(total_entropy(kf, weights));
    }
    // Written as a negated <= so a NaN-poisoned field also trips the monitor.
    if (opts.monitor_blow_up && !(max_abs_zeroth_moment(kf) <= threshold)) {
      rr.blew_up = true;
      break;
    }
  }
  rr.state = zeroth_moment(kf);
  return rr;
}

}  // namespace kinwave
