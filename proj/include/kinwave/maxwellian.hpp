#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "kinwave/lattice.hpp"

// Construction of the symmetric-positive Maxwellian matrices Omega_zeta that
// define a vectorial kinetic scheme for 2D linear acoustics: the linear
// equilibrium is fbar_zeta(q) = Omega_zeta q.  The free entries live in
// Omega_1 (and Omega_5 for D2Q9); the remaining matrices follow by
// quarter-turn conjugation, and Omega_0 soaks up the consistency constraint
// sum_zeta Omega_zeta = I.

namespace kinwave {

// Tolerances shared by the construction checks.  kPsdTol bounds how negative
// an eigenvalue may be before a matrix counts as indefinite; kMomentTol
// bounds the entrywise defect of the moment identities; kRankTolRel is the
// relative eigenvalue cutoff for pseudo-inversion of singular Maxwellians.
inline constexpr double kPsdTol = 1e-12;
inline constexpr double kMomentTol = 1e-13;
inline constexpr double kRankTolRel = 1e-10;

// Scheme parameters.  y = -c/(2 lambda) and z = 0 are forced by flux
// consistency and are therefore derived, not stored; same for the tilded
// y, z of the diagonal ring.
struct KineticParams {
  LatticeKind kind = LatticeKind::d2q5;
  double c = 1.0;       // sound speed
  double lambda = 2.0;  // kinetic speed magnitude
  double omega = 2.0;   // relaxation parameter in [1, 2]
  double alpha = 0.5, beta = 0.0, gamma = 0.25, x = 0.0;
  // Diagonal-ring parameters (D2Q9 only; zero for D2Q5).
  double tilde_alpha = 0.0, tilde_beta = 0.0, tilde_gamma = 0.0,
         tilde_x = 0.0;

  double y() const { return -c / (2.0 * lambda); }
};

enum class Preset { optimal, cfl_half_a, cfl_half_b, cfl_half_c, d2q9 };

inline constexpr std::array<Preset, 5> kAllPresets = {
    Preset::optimal, Preset::cfl_half_a, Preset::cfl_half_b,
    Preset::cfl_half_c, Preset::d2q9};

// The parameter choices compared in the experiments, scaled to sound speed c:
//   optimal     lambda = sqrt(2) c, alpha = 1/2, gamma = 1/4   (CFL 1/sqrt2)
//   cfl-half-a  lambda = 2c,        alpha = 1/2, gamma = 1/4
//   cfl-half-b  lambda = 2c,        alpha = 1/4, gamma = 1/4
//   cfl-half-c  lambda = 2c,        alpha = 1/2, gamma = 1/8
//   d2q9        lambda = 3c/2, alpha = 4/9, gamma = 1/4,
//               tilde_alpha = tilde_beta = tilde_x = c^2/(16 lambda^2) = 1/36,
//               tilde_gamma = 0
// all with beta = x = 0.  omega is left at its default (2) for the caller to
// override.
KineticParams preset(Preset name, double c);

std::string_view preset_name(Preset name);     // stable CLI-facing string
Preset parse_preset(std::string_view name);    // throws on unknown name

struct MaxwellianSet {
  VelocitySet vset;
  std::vector<Eigen::Matrix3d> omegas;       // indexed by zeta, 0 = rest
  // Spectral pseudo-inverses of the omegas (the kinetic entropy weights);
  // filled at build time when every Omega_zeta is positive semi-definite,
  // left empty otherwise.
  std::vector<Eigen::Matrix3d> pinv_omegas;
};

MaxwellianSet build_d2q5(const KineticParams& params);
MaxwellianSet build_d2q9(const KineticParams& params);
MaxwellianSet build(const KineticParams& params);  // dispatches on params.kind

// Acoustic flux matrices of the symmetrized system.
Eigen::Matrix3d acoustic_a1(double c);
Eigen::Matrix3d acoustic_a2(double c);

// One admissibility inequality, evaluated as slack = lhs - rhs >= -kPsdTol.
struct AdmissibilityCheck {
  std::string name;
  double slack = 0.0;
  bool ok = false;
};

struct Admissibility {
  bool pass = false;
  std::vector<AdmissibilityCheck> checks;

  std::vector<AdmissibilityCheck> violations() const;
};

// Positivity of every Omega_zeta, evaluated through the full principal-minor
// set of Omega_1 (and Omega_5 for D2Q9) plus the diagonal of Omega_0; the
// rotated matrices share their spectra with Omega_1/Omega_5.  Non-strict:
// boundary cases such as the optimal preset pass with zero slack.  Agrees
// with the eigenvalue criterion: pass iff all built matrices are PSD.
Admissibility check_admissible(const KineticParams& params);

// Second moments of the equilibrium against the target A_a A_b.  The moment
// weight of each speed is sign(c^a) sign(c^b) |c_zeta|^2, so diagonal speeds
// enter with 2 lambda^2; the defects D_ab = M_ab fbar - A_a A_b are the
// blocks of the numerical-diffusion matrix.  Returned in order
// D11, D12, D21, D22.
std::array<Eigen::Matrix3d, 4> second_moment_defect(const MaxwellianSet& ms);

struct DiffusionReport {
  Eigen::Matrix<double, 6, 6> b_matrix;  // [[D11, D12], [D21, D22]]
  double min_eigenvalue = 0.0;
  double residual_norm = 0.0;  // Frobenius norm of the stacked defects
};

DiffusionReport diffusion_report(const KineticParams& params);

// The quantity the optimal preset minimizes: the squared second-moment
// defect that remains controllable once beta = x = 0,
//   J = |2 lambda^2 alpha - c^2|^2 + |2 lambda^2 gamma - c^2|^2.
double diffusion_objective(double alpha, double gamma, double lambda, double c);

// The kinetic entropy weights pinv(Omega_zeta) defining
// h_zeta(f) = f^T pinv(Omega_zeta) f / 2.  Throws std::domain_error if any
// Omega_zeta has an eigenvalue below -kPsdTol; singular directions (relative
// eigenvalue below kRankTolRel) are annihilated, which is exactly where the
// populations never carry mass.
std::vector<Eigen::Matrix3d> entropy_weights(const MaxwellianSet& ms);

}  // namespace kinwave
