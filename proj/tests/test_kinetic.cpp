#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "kinwave/kinetic.hpp"
#include "kinwave/reference.hpp"

using namespace kinwave;

namespace {

double max_abs_diff(const AcousticState& a, const AcousticState& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    m = std::max(m, std::abs(a.data[i] - b.data[i]));
  }
  return m;
}

AcousticState pulse_state(const Grid& grid, int i, int j, double v, double w,
                          double p) {
  AcousticState q = AcousticState::zeros(grid);
  q.v(i, j) = v;
  q.w(i, j) = w;
  q.p(i, j) = p;
  return q;
}

}  // namespace

TEST_CASE("equilibrium init populates Omega columns and reproduces moments") {
  const double c = 0.7071067811865476;
  const MaxwellianSet ms = build(preset(Preset::optimal, c));
  const Grid grid = Grid::make(0.125, 1.0);  // n = 16
  const AcousticState q0 = pulse_state(grid, 5, 9, 0.0, 0.0, 1.0);
  const KineticField kf = init_field(ms, q0);

  const std::size_t at = 3 * grid.index(5, 9);
  // pure pressure pulse: f_zeta = third column of Omega_zeta
  CHECK(kf.f[1][at + 0] == ms.omegas[1](0, 2));
  CHECK(kf.f[1][at + 1] == ms.omegas[1](1, 2));
  CHECK(kf.f[1][at + 2] == ms.omegas[1](2, 2));
  CHECK(kf.f[0][at + 2] == ms.omegas[0](2, 2));

  const Moments mom = moments(kf);
  CHECK(max_abs_diff(mom.m0, q0) <= 1e-15);
  // first moments are the fluxes: m1 = A1 q, m2 = A2 q
  CHECK(std::abs(mom.m1.v(5, 9) - (-c)) <= 1e-14);
  CHECK(std::abs(mom.m1.w(5, 9)) <= 1e-14);
  CHECK(std::abs(mom.m1.p(5, 9)) <= 1e-14);
  CHECK(std::abs(mom.m2.w(5, 9) - (-c)) <= 1e-14);
  CHECK(std::abs(mom.m2.v(5, 9)) <= 1e-14);

  CHECK(max_abs_zeroth_moment(kf) == 1.0);
  AcousticState truncated = q0;
  truncated.data.pop_back();
  CHECK_THROWS_AS(init_field(ms, truncated), std::invalid_argument);
}

TEST_CASE("uniform equilibria are exact fixed points of the step") {
  const MaxwellianSet ms = build(preset(Preset::cfl_half_a, 1.0));
  const Grid grid = Grid::make(0.125, 1.0);
  AcousticState q0 = AcousticState::zeros(grid);
  for (int j = 0; j < grid.n; ++j) {
    for (int i = 0; i < grid.n; ++i) {
      q0.v(i, j) = 0.3;
      q0.w(i, j) = -0.2;
      q0.p(i, j) = 0.9;
    }
  }
  for (double omega : {1.0, 2.0}) {
    CAPTURE(omega);
    KineticField kf = init_field(ms, q0);
    const std::vector<std::vector<double>> before = kf.f;
    step(kf, ms, omega);
    double worst = 0.0;
    for (int z = 0; z < ms.vset.q; ++z) {
      for (std::size_t idx = 0; idx < before[z].size(); ++idx) {
        worst = std::max(worst, std::abs(kf.f[z][idx] - before[z][idx]));
      }
    }
    // Transport is a shift and the collision projects back onto the same
    // equilibrium; only the re-summed moment costs an ulp per component.
    CHECK(worst <= 1e-15);
  }
}

TEST_CASE("stepping rejects a mismatched Maxwellian set") {
  const MaxwellianSet d2q5 = build(preset(Preset::optimal, 1.0));
  const MaxwellianSet d2q9 = build(preset(Preset::d2q9, 1.0));
  const Grid grid = Grid::make(0.25, 1.0);
  KineticField kf = init_field(d2q5, AcousticState::zeros(grid));
  CHECK_THROWS_AS(step(kf, d2q9, 2.0), std::invalid_argument);
}

TEST_CASE("the total state is conserved by the step") {
  const Grid grid = Grid::make(0.0625, 1.0);  // n = 32
  const AcousticState q0 = gaussian_pressure(grid, 1.0, 8.0);
  for (Preset pr : {Preset::optimal, Preset::d2q9}) {
    CAPTURE(preset_name(pr));
    const MaxwellianSet ms = build(preset(pr, 0.7071067811865476));
    KineticField kf = init_field(ms, q0);
    double sum0[3] = {0.0, 0.0, 0.0};
    for (std::size_t idx = 0; idx < q0.data.size(); ++idx) {
      sum0[idx % 3] += q0.data[idx];
    }
    for (int s = 0; s < 20; ++s) step(kf, ms, 1.7);
    const AcousticState m0 = zeroth_moment(kf);
    double sum1[3] = {0.0, 0.0, 0.0};
    for (std::size_t idx = 0; idx < m0.data.size(); ++idx) {
      sum1[idx % 3] += m0.data[idx];
    }
    for (int comp = 0; comp < 3; ++comp) {
      CHECK(std::abs(sum1[comp] - sum0[comp]) <=
            1e-11 * (1.0 + std::abs(sum0[comp])));
    }
  }
}

TEST_CASE("populations remain in the range of their Maxwellians") {
  const MaxwellianSet ms = build(preset(Preset::optimal, 0.7071067811865476));
  const Grid grid = Grid::make(0.0625, 1.0);
  KineticField kf = init_field(ms, gaussian_pressure(grid, 1.0, 8.0));
  for (int s = 0; s < 50; ++s) step(kf, ms, 2.0);
  double worst = 0.0;
  for (int z = 0; z < ms.vset.q; ++z) {
    const Eigen::Matrix3d proj = ms.omegas[z] * ms.pinv_omegas[z];
    for (std::size_t node = 0; node < grid.size(); node += 37) {
      const double* f = &kf.f[z][3 * node];
      const Eigen::Vector3d fv(f[0], f[1], f[2]);
      worst = std::max(worst, (fv - proj * fv).cwiseAbs().maxCoeff());
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("relaxed transport at rate one is the first-order upwind scheme") {
  // cfl-half-b puts the kinetic scheme at Courant number 1/2, where its
  // omega = 1 update telescopes into the upwind finite-volume stencil.
  const double c = 0.7071067811865476;
  const MaxwellianSet ms = build(preset(Preset::cfl_half_b, c));
  const Grid grid = Grid::make(0.0625, 1.0);
  const AcousticState q0 = gaussian_pressure(grid, 1.0, 8.0);
  KineticField kf = init_field(ms, q0);
  AcousticState fv = q0;
  for (int s = 1; s <= 100; ++s) {
    step(kf, ms, 1.0);
    fv = fv1_step(fv, 0.5);
    CAPTURE(s);
    REQUIRE(max_abs_diff(zeroth_moment(kf), fv) <= 1e-12);
  }
}

TEST_CASE("kinetic runs commute with quarter turns of the data") {
  const Grid grid = Grid::make(0.125, 1.0);
  const AcousticState q0 = pulse_state(grid, 3, 5, 0.3, -0.1, 0.8);
  for (Preset pr : {Preset::optimal, Preset::d2q9}) {
    for (double omega : {1.0, 2.0}) {
      CAPTURE(preset_name(pr));
      CAPTURE(omega);
      const MaxwellianSet ms = build(preset(pr, 0.7071067811865476));
      const RunResult straight = run(q0, ms, omega, 12);
      const RunResult turned = run(rotate_quarter(q0), ms, omega, 12);
      CHECK(max_abs_diff(turned.state, rotate_quarter(straight.state)) <=
            1e-12);
    }
  }
}

TEST_CASE("entropy of an equilibrium field is half the squared state") {
  const Grid grid = Grid::make(0.0625, 1.0);
  const AcousticState q0 = gaussian_pressure(grid, 1.0, 8.0);
  const MaxwellianSet ms = build(preset(Preset::cfl_half_b, 0.7071067811865476));
  const KineticField kf = init_field(ms, q0);
  double expected = 0.0;
  for (std::size_t node = 0; node < grid.size(); ++node) {
    const double* q = &q0.data[3 * node];
    expected += 0.5 * (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]);
  }
  expected *= grid.delta * grid.delta;
  const double h = total_entropy(kf, ms.pinv_omegas);
  CHECK(h == doctest::Approx(expected).epsilon(1e-12));
  CHECK_THROWS_AS(total_entropy(kf, {}), std::invalid_argument);
}

TEST_CASE("entropy decays at omega = 1 and freezes at omega = 2") {
  const Grid grid = Grid::make(0.0625, 1.0);
  const AcousticState q0 = gaussian_pressure(grid, 1.0, 8.0);
  for (Preset pr : {Preset::optimal, Preset::cfl_half_c}) {
    CAPTURE(preset_name(pr));
    const MaxwellianSet ms = build(preset(pr, 0.7071067811865476));
    RunOptions opts;
    opts.record_entropy = true;

    const RunResult damped = run(q0, ms, 1.0, 30, opts);
    REQUIRE(damped.entropy.size() == 31);
    const double h0 = damped.entropy.front();
    for (std::size_t s = 1; s < damped.entropy.size(); ++s) {
      CHECK(damped.entropy[s] <= damped.entropy[s - 1] + 1e-12 * h0);
    }
    CHECK(damped.entropy.back() < h0);  // strict decay away from equilibrium

    const RunResult frozen = run(q0, ms, 2.0, 30, opts);
    for (double h : frozen.entropy) {
      CHECK(std::abs(h - h0) <= 1e-12 * h0);
    }
  }
}

TEST_CASE("gaussian pressure states and quarter turns behave as documented") {
  const Grid grid = Grid::make(0.125, 1.0);
  const AcousticState q = gaussian_pressure(grid, 2.0, 3.0);
  const double x = grid.coord(3), y = grid.coord(11);
  CHECK(q.p(3, 11) == 2.0 * std::exp(-3.0 * (x * x + y * y)));
  CHECK(q.v(3, 11) == 0.0);
  CHECK(q.w(3, 11) == 0.0);
  CHECK(max_abs(q) == q.p(grid.n / 2, grid.n / 2));  // peak nearest origin

  AcousticState pulse = pulse_state(grid, 3, 5, 0.3, -0.1, 0.8);
  const AcousticState turned = rotate_quarter(pulse);
  // node (i,j) -> (n-1-j, i), components (v,w,p) -> (-w,v,p)
  CHECK(turned.v(grid.n - 1 - 5, 3) == 0.1);
  CHECK(turned.w(grid.n - 1 - 5, 3) == 0.3);
  CHECK(turned.p(grid.n - 1 - 5, 3) == 0.8);
  AcousticState four = pulse;
  for (int r = 0; r < 4; ++r) four = rotate_quarter(four);
  CHECK(max_abs_diff(four, pulse) == 0.0);  // involution squared, exactly
}

TEST_CASE("the blow-up monitor halts an inadmissible run") {
  const double c = 0.7071067811865476;
  KineticParams p = preset(Preset::optimal, c);
  p.lambda = (std::sqrt(2.0) - 0.1) * c;  // below the admissible range
  const MaxwellianSet ms = build(p);
  const Grid grid = Grid::make(0.03125, 1.0);  // n = 64
  const AcousticState q0 = gaussian_pressure(grid, 1.0, 8.0);

  const RunResult rr = run(q0, ms, 2.0, 2000);
  CHECK(rr.blew_up);
  CHECK(rr.steps_done >= 1);
  CHECK(rr.steps_done < 2000);

  // the same run under an admissible preset completes quietly
  const RunResult ok = run(q0, build(preset(Preset::optimal, c)), 2.0, 500);
  CHECK_FALSE(ok.blew_up);
  CHECK(ok.steps_done == 500);
}
