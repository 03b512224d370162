#include "kinwave/maxwellian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kinwave {

namespace {

// Quarter-turn rotation acting on (v, w, p).  Conjugating a Maxwellian by it
// yields the Maxwellian of the next speed in the ring.  Entries are 0 and
// +-1, so every entry of R M R^T is a single signed entry of M plus exact
// zeros: the conjugation is exact in floating point.
Eigen::Matrix3d quarter_turn() {
  Eigen::Matrix3d r;
  r << 0, -1, 0,  //
      1, 0, 0,    //
      0, 0, 1;
  return r;
}

double min_eigenvalue(const std::vector<Eigen::Matrix3d>& mats) {
  double m = std::numeric_limits<double>::infinity();
  for (const Eigen::Matrix3d& a : mats) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(a);
    m = std::min(m, es.eigenvalues().minCoeff());
  }
  return m;
}

void finish(MaxwellianSet& ms) {
  if (min_eigenvalue(ms.omegas) >= -kPsdTol) {
    ms.pinv_omegas = entropy_weights(ms);
  }
}

// All seven principal minors of a symmetric 3x3 matrix; together they are
// necessary and sufficient for positive semi-definiteness (the leading
// minors alone are not, in the semi-definite case).
void append_psd_checks(std::vector<AdmissibilityCheck>& checks,
                       const std::string& prefix, const Eigen::Matrix3d& m) {
  auto add = [&](const char* name, double slack) {
    checks.push_back({prefix + name, slack, slack >= -kPsdTol});
  };
  add("[0,0] >= 0", m(0, 0));
  add("[1,1] >= 0", m(1, 1));
  add("[2,2] >= 0", m(2, 2));
  add("minor(0,1) >= 0", m(0, 0) * m(1, 1) - m(0, 1) * m(0, 1));
  add("minor(0,2) >= 0", m(0, 0) * m(2, 2) - m(0, 2) * m(0, 2));
  add("minor(1,2) >= 0", m(1, 1) * m(2, 2) - m(1, 2) * m(1, 2));
  add("det >= 0", m.determinant());
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

KineticParams preset(Preset name, double c) {
  if (!(c > 0.0)) {
    throw std::invalid_argument("preset needs sound speed c > 0");
  }
  KineticParams p;
  p.c = c;
  p.beta = 0.0;
  p.x = 0.0;
  switch (name) {
    case Preset::optimal:
      p.kind = LatticeKind::d2q5;
      p.lambda = std::sqrt(2.0) * c;
      p.alpha = 0.5;
      p.gamma = 0.25;
      break;
    case Preset::cfl_half_a:
      p.kind = LatticeKind::d2q5;
      p.lambda = 2.0 * c;
      p.alpha = 0.5;
      p.gamma = 0.25;
      break;
    case Preset::cfl_half_b:
      p.kind = LatticeKind::d2q5;
      p.lambda = 2.0 * c;
      p.alpha = 0.25;
      p.gamma = 0.25;
      break;
    case Preset::cfl_half_c:
      p.kind = LatticeKind::d2q5;
      p.lambda = 2.0 * c;
      p.alpha = 0.5;
      p.gamma = 0.125;
      break;
    case Preset::d2q9:
      p.kind = LatticeKind::d2q9;
      p.lambda = 1.5 * c;
      p.alpha = 4.0 / 9.0;
      p.gamma = 0.25;
      // c^2/(16 lambda^2) = 1/36 for lambda = 3c/2; spelled as the exact
      // complement of alpha so 2(alpha + tilde_alpha + tilde_beta) == 1
      // holds bit-exactly and the rest Maxwellian cancels to exact zero.
      p.tilde_alpha = p.tilde_beta = p.tilde_x = (1.0 - 2.0 * p.alpha) / 4.0;
      p.tilde_gamma = 0.0;
      break;
  }
  return p;
}

std::string_view preset_name(Preset name) {
  switch (name) {
    case Preset::optimal:
      return "optimal";
    case Preset::cfl_half_a:
      return "cfl-half-a";
    case Preset::cfl_half_b:
      return "cfl-half-b";
    case Preset::cfl_half_c:
      return "cfl-half-c";
    case Preset::d2q9:
      return "d2q9";
  }
  throw std::logic_error("unhandled preset enumerator");
}

Preset parse_preset(std::string_view name) {
  for (Preset p : kAllPresets) {
    if (preset_name(p) == name) return p;
  }
  throw std::invalid_argument(
      "unknown preset '" + std::string(name) +
      "'; expected optimal, cfl-half-a, cfl-half-b, cfl-half-c or d2q9");
}

Eigen::Matrix3d acoustic_a1(double c) {
  Eigen::Matrix3d a;
  a << 0, 0, -c,  //
      0, 0, 0,    //
      -c, 0, 0;
  return a;
}

Eigen::Matrix3d acoustic_a2(double c) {
  Eigen::Matrix3d a;
  a << 0, 0, 0,  //
      0, 0, -c,  //
      0, -c, 0;
  return a;
}

MaxwellianSet build_d2q5(const KineticParams& p) {
  if (p.kind != LatticeKind::d2q5) {
    throw std::invalid_argument("build_d2q5 called with non-D2Q5 parameters");
  }
  MaxwellianSet ms;
  ms.vset = make_velocity_set(LatticeKind::d2q5, p.lambda);
  ms.omegas.resize(5);

  const double y = p.y();  // flux consistency: 2 lambda y = -c
  Eigen::Matrix3d o1;
  o1 << p.alpha, p.x, y,  //
      p.x, p.beta, 0.0,   //
      y, 0.0, p.gamma;
  const Eigen::Matrix3d r = quarter_turn();
  ms.omegas[1] = o1;
  for (int zeta = 2; zeta <= 4; ++zeta) {
    ms.omegas[zeta] = r * ms.omegas[zeta - 1] * r.transpose();
  }
  // Closed form of I - sum of the ring: the off-diagonals cancel in exact
  // pairs, leaving a diagonal matrix.
  const double rest_vw = 1.0 - 2.0 * (p.alpha + p.beta);
  const double rest_p = 1.0 - 4.0 * p.gamma;
  ms.omegas[0] = Eigen::Vector3d(rest_vw, rest_vw, rest_p).asDiagonal();
  finish(ms);
  return ms;
}

MaxwellianSet build_d2q9(const KineticParams& p) {
  if (p.kind != LatticeKind::d2q9) {
    throw std::invalid_argument("build_d2q9 called with non-D2Q9 parameters");
  }
  MaxwellianSet ms;
  ms.vset = make_velocity_set(LatticeKind::d2q9, p.lambda);
  ms.omegas.resize(9);

  const double y = p.y();
  Eigen::Matrix3d o1;
  o1 << p.alpha, p.x, y,  //
      p.x, p.beta, 0.0,   //
      y, 0.0, p.gamma;
  // The axis ring already accounts for the full flux, so consistency forces
  // the (0,2) and (1,2) slots of the diagonal ring to zero.
  Eigen::Matrix3d o5;
  o5 << p.tilde_alpha, p.tilde_x, 0.0,  //
      p.tilde_x, p.tilde_beta, 0.0,     //
      0.0, 0.0, p.tilde_gamma;

  const Eigen::Matrix3d r = quarter_turn();
  ms.omegas[1] = o1;
  for (int zeta = 2; zeta <= 4; ++zeta) {
    ms.omegas[zeta] = r * ms.omegas[zeta - 1] * r.transpose();
  }
  ms.omegas[5] = o5;
  for (int zeta = 6; zeta <= 8; ++zeta) {
    ms.omegas[zeta] = r * ms.omegas[zeta - 1] * r.transpose();
  }
  // Grouped so a preset with 2(alpha + beta) + 2(ta + tb) == 1 lands on an
  // exact zero (Sterbenz: both subtractions below are exact).
  const double rest_vw =
      (1.0 - 2.0 * (p.alpha + p.beta)) -
      2.0 * (p.tilde_alpha + p.tilde_beta);
  const double rest_p = (1.0 - 4.0 * p.gamma) - 4.0 * p.tilde_gamma;
  ms.omegas[0] = Eigen::Vector3d(rest_vw, rest_vw, rest_p).asDiagonal();
  finish(ms);
  return ms;
}

MaxwellianSet build(const KineticParams& p) {
  return p.kind == LatticeKind::d2q5 ? build_d2q5(p) : build_d2q9(p);
}

std::vector<AdmissibilityCheck> Admissibility::violations() const {
  std::vector<AdmissibilityCheck> bad;
  for (const AdmissibilityCheck& c : checks) {
    if (!c.ok) bad.push_back(c);
  }
  return bad;
}

Admissibility check_admissible(const KineticParams& params) {
  const MaxwellianSet ms = build(params);
  Admissibility adm;
  append_psd_checks(adm.checks, "omega1 ", ms.omegas[1]);
  if (params.kind == LatticeKind::d2q9) {
    append_psd_checks(adm.checks, "omega5 ", ms.omegas[5]);
  }
  // The rest Maxwellian is diagonal, so positivity of its entries finishes
  // the job; the rotated ring matrices share the spectra of omega1/omega5.
  const char* rest_names[3] = {"omega0 [0,0] >= 0", "omega0 [1,1] >= 0",
                               "omega0 [2,2] >= 0"};
  for (int i = 0; i < 3; ++i) {
    const double slack = ms.omegas[0](i, i);
    adm.checks.push_back({rest_names[i], slack, slack >= -kPsdTol});
  }
  adm.pass = true;
  for (const AdmissibilityCheck& c : adm.checks) adm.pass = adm.pass && c.ok;
  return adm;
}

std::array<Eigen::Matrix3d, 4> second_moment_defect(const MaxwellianSet& ms) {
  const VelocitySet& vs = ms.vset;
  // Reconstruct the flux targets from the first-moment identity; the build
  // satisfies it to round-off, so the A_a A_b products are exact to the
  // same level.
  Eigen::Matrix3d a[2] = {Eigen::Matrix3d::Zero(), Eigen::Matrix3d::Zero()};
  Eigen::Matrix3d m[2][2] = {
      {Eigen::Matrix3d::Zero(), Eigen::Matrix3d::Zero()},
      {Eigen::Matrix3d::Zero(), Eigen::Matrix3d::Zero()}};
  for (int zeta = 0; zeta < vs.q; ++zeta) {
    const std::array<double, 2> cz = vs.speed(zeta);
    const double c2 = cz[0] * cz[0] + cz[1] * cz[1];
    for (int u = 0; u < 2; ++u) {
      a[u] += cz[u] * ms.omegas[zeta];
      for (int v = 0; v < 2; ++v) {
        const double weight = sign_of(cz[u]) * sign_of(cz[v]) * c2;
        if (weight != 0.0) m[u][v] += weight * ms.omegas[zeta];
      }
    }
  }
  return {m[0][0] - a[0] * a[0], m[0][1] - a[0] * a[1],
          m[1][0] - a[1] * a[0], m[1][1] - a[1] * a[1]};
}

DiffusionReport diffusion_report(const KineticParams& params) {
  const MaxwellianSet ms = build(params);
  const std::array<Eigen::Matrix3d, 4> d = second_moment_defect(ms);
  DiffusionReport rep;
  rep.b_matrix.topLeftCorner<3, 3>() = d[0];
  rep.b_matrix.topRightCorner<3, 3>() = d[1];
  rep.b_matrix.bottomLeftCorner<3, 3>() = d[2];
  rep.b_matrix.bottomRightCorner<3, 3>() = d[3];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(rep.b_matrix);
  rep.min_eigenvalue = es.eigenvalues().minCoeff();
  rep.residual_norm = rep.b_matrix.norm();
  return rep;
}

double diffusion_objective(double alpha, double gamma, double lambda,
                           double c) {
  const double two_l2 = 2.0 * lambda * lambda;
  const double da = two_l2 * alpha - c * c;
  const double dg = two_l2 * gamma - c * c;
  return da * da + dg * dg;
}

std::vector<Eigen::Matrix3d> entropy_weights(const MaxwellianSet& ms) {
  std::vector<Eigen::Matrix3d> weights;
  weights.reserve(ms.omegas.size());
  for (const Eigen::Matrix3d& omega : ms.omegas) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(omega);
    const Eigen::Vector3d ev = es.eigenvalues();
    if (ev.minCoeff() < -kPsdTol) {
      throw std::domain_error(
          "entropy weights need positive semi-definite Maxwellians; found "
          "eigenvalue " +
          std::to_string(ev.minCoeff()));
    }
    const double cutoff = kRankTolRel * ev.cwiseAbs().maxCoeff();
    Eigen::Vector3d inv = Eigen::Vector3d::Zero();
    for (int i = 0; i < 3; ++i) {
      if (ev[i] > cutoff) inv[i] = 1.0 / ev[i];
    }
    weights.push_back(es.eigenvectors() * inv.asDiagonal() *
                      es.eigenvectors().transpose());
  }
  return weights;
}

}  // namespace kinwave
