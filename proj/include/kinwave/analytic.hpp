#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "kinwave/field.hpp"
#include "kinwave/lattice.hpp"

// Closed-form solution of the acoustic wave equation for the radially
// symmetric Gaussian pressure start p(0,r) = kappa exp(-mu r^2), v = w = 0:
//
//   p(t,r) = (kappa / 2 mu) int_0^inf exp(-k^2 / 4 mu) cos(c k t) J0(k r) k dk
//
// evaluated by a discrete Hankel transform: the integral is expanded in the
// Fourier-Bessel basis on [0, X], giving the finite sum
//
//   p(t,r) ~= sum_s  [2 / (X^2 J1(z_s)^2)] (kappa / 2 mu)
//             exp(-k_s^2 / 4 mu) cos(c k_s t) J0(k_s r),    k_s = z_s / X
//
// over the first m zeros z_s of J0.  The initial profile decays like
// exp(-mu X^2) at the artificial boundary, so X = 4 with mu = 2 puts the
// truncation error far below round-off; the Gaussian factor kills the series
// itself after a few dozen terms.

namespace kinwave {

// Bessel functions of the first kind, |error| <~ 1e-15 absolute over the
// argument ranges the transform uses (|x| up to a few thousand): a
// double-double power series up to |x| = 18, the Hankel asymptotic expansion
// truncated at its smallest term beyond.
double bessel_j0(double x);
double bessel_j1(double x);

// First m positive zeros of J0, from the McMahon expansion polished by
// Newton iterations; each root is verified to satisfy |J0(z)| <= 1e-12.
std::vector<double> j0_zeros(int m);

struct GaussianInit {
  double kappa = 1.0;
  double mu = 2.0;
};

// The quadrature skeleton of the transform: zeros of J0 and the Fourier-
// Bessel normalization weights 2 / (X^2 J1(z_s)^2) for radial interval
// [0, x_max].
struct HankelTable {
  int m_zeros = 0;
  double x_max = 0;
  std::vector<double> zeros;
  std::vector<double> weights;

  static HankelTable make(int m_zeros, double x_max);
};

class AnalyticOracle {
 public:
  AnalyticOracle(GaussianInit init, double sound_speed, int m_zeros = 4096,
                 double x_max = 4.0);

  // Pressure at time t and radius r.  r must lie inside the current series
  // interval; call ensure_radius first when evaluating near or past x_max.
  double pressure(double t, double r) const;

  // Grow the series interval (doubling x_max, with a warning on stderr)
  // until r fits with margin.  The mode count grows in proportion so the
  // resolved wavenumber range is unchanged.
  void ensure_radius(double r);

  // Pressure profile at fixed t for many radii; hoists the time-dependent
  // cosine factors out of the radius loop.
  std::vector<double> profile(double t, const std::vector<double>& radii) const;

  double x_max() const { return table_.x_max; }
  int terms() const { return static_cast<int>(coeff_.size()); }

 private:
  void rebuild();

  GaussianInit init_;
  double c_;
  int m_requested_;
  HankelTable table_;
  // coeff_[s] = weight_s (kappa / 2 mu) exp(-k_s^2 / 4 mu), truncated where
  // the Gaussian factor drops below 1e-30 of the largest coefficient.
  std::vector<double> coeff_;
  std::vector<double> wavenumbers_;
};

// Sampled exact solution on a grid: p from the oracle (radius cache keyed on
// the bit pattern of r^2, since the grid has few distinct radii), v = w = 0.
// Only the pressure component is meaningful for comparisons.
AcousticState analytic_field(AnalyticOracle& oracle, const Grid& grid,
                             double t);

}  // namespace kinwave
