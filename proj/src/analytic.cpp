#include "kinwave/analytic.hpp"

#include <bit>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace kinwave {

namespace {

// Double-double helpers (an unevaluated sum hi + lo carrying ~32 digits).
// The J0/J1 power series suffers ~8 digits of cancellation near x = 18
// (largest term ~1e6 against a result ~1e-2), so plain doubles would cap
// the accuracy near 1e-10; double-double keeps the series error below
// 1e-20 over the whole |x| <= 18 range.
struct Dd {
  double hi = 0.0, lo = 0.0;
};

Dd two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

Dd quick_two_sum(double a, double b) {  // requires |a| >= |b|
  const double s = a + b;
  return {s, b - (s - a)};
}

Dd two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

Dd dd_add(Dd a, Dd b) {
  Dd s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}

Dd dd_mul(Dd a, Dd b) {
  Dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

Dd dd_div(Dd a, double b) {
  const double q1 = a.hi / b;
  const Dd p = two_prod(q1, b);
  const double r = ((a.hi - p.hi) - p.lo) + a.lo;
  return quick_two_sum(q1, q1 == 0.0 ? 0.0 : r / b);
}

constexpr double kSeriesSwitch = 18.0;

// J0(x) = sum (-1)^m (x^2/4)^m / (m!)^2 in double-double arithmetic.
double j0_series(double x) {
  const Dd z = dd_mul(two_prod(x, x), {0.25, 0.0});
  Dd term{1.0, 0.0};
  Dd sum{1.0, 0.0};
  for (int m = 1; m <= 200; ++m) {
    term = dd_div(dd_mul(term, z), -static_cast<double>(m) * m);
    sum = dd_add(sum, term);
    if (std::abs(term.hi) < 1e-30) return sum.hi + sum.lo;
  }
  throw std::runtime_error("J0 power series failed to converge");
}

// J1(x) = (x/2) sum (-1)^m (x^2/4)^m / (m! (m+1)!).
double j1_series(double x) {
  const Dd z = dd_mul(two_prod(x, x), {0.25, 0.0});
  Dd term{1.0, 0.0};
  Dd sum{1.0, 0.0};
  for (int m = 1; m <= 200; ++m) {
    term = dd_div(dd_mul(term, z), -static_cast<double>(m) * (m + 1));
    sum = dd_add(sum, term);
    if (std::abs(term.hi) < 1e-30) return 0.5 * x * (sum.hi + sum.lo);
  }
  throw std::runtime_error("J1 power series failed to converge");
}

// Modulus/phase (Hankel) expansion coefficients: a_0 = 1,
// a_k = a_{k-1} (4 nu^2 - (2k-1)^2) / (8 x k); even k feed P with sign
// (-1)^{k/2}, odd k feed Q with sign (-1)^{(k-1)/2}.  Truncated at the
// smallest term, leaving an error ~e^{-2x} (3e-16 at the x = 18 switch).
void jpq_asymptotic(double x, double four_nu2, double& p, double& q) {
  double a = 1.0;
  p = 1.0;
  q = 0.0;
  for (int k = 1; k <= 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = a * (four_nu2 - odd * odd) / (8.0 * x * k);
    if (std::abs(next) >= std::abs(a)) break;  // divergent tail reached
    a = next;
    const double signed_a = (k % 4 < 2) ? a : -a;
    if (k % 2 == 1) {
      q += signed_a;
    } else {
      p += signed_a;
    }
    if (std::abs(a) < 1e-17) break;
  }
}

double j0_asymptotic(double x) {
  double p, q;
  jpq_asymptotic(x, 0.0, p, q);
  const double s = std::sin(x), c = std::cos(x);
  return (p * (c + s) - q * (s - c)) / std::sqrt(std::numbers::pi * x);
}

double j1_asymptotic(double x) {
  double p, q;
  jpq_asymptotic(x, 4.0, p, q);
  const double s = std::sin(x), c = std::cos(x);
  return (p * (s - c) + q * (s + c)) / std::sqrt(std::numbers::pi * x);
}

}  // namespace

double bessel_j0(double x) {
  const double ax = std::abs(x);
  return ax <= kSeriesSwitch ? j0_series(ax) : j0_asymptotic(ax);
}

double bessel_j1(double x) {
  const double ax = std::abs(x);
  const double j1 = ax <= kSeriesSwitch ? j1_series(ax) : j1_asymptotic(ax);
  return x < 0.0 ? -j1 : j1;
}

std::vector<double> j0_zeros(int m) {
  if (m < 1) {
    throw std::invalid_argument("j0_zeros needs m >= 1");
  }
  std::vector<double> zs(m);
  for (int s = 1; s <= m; ++s) {
    // McMahon expansion for the s-th zero, then Newton polish
    // (J0' = -J1, so the update is z + J0/J1).
    const double beta = (s - 0.25) * std::numbers::pi;
    const double b = 8.0 * beta;
    double z = beta + 1.0 / b - 124.0 / (3.0 * b * b * b) +
               120928.0 / (15.0 * b * b * b * b * b);
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
      const double dz = bessel_j0(z) / bessel_j1(z);
      z += dz;
      if (std::abs(dz) <= 4e-16 * z) {
        converged = true;
        break;
      }
    }
    if (!converged || std::abs(bessel_j0(z)) > 1e-12) {
      throw std::runtime_error("Newton iteration for J0 zero " +
                               std::to_string(s) + " did not converge");
    }
    zs[s - 1] = z;
  }
  for (int s = 1; s < m; ++s) {
    if (!(zs[s] > zs[s - 1])) {
      throw std::runtime_error("J0 zeros not strictly increasing");
    }
  }
  return zs;
}

HankelTable HankelTable::make(int m_zeros, double x_max) {
  if (m_zeros < 1 || !(x_max > 0.0)) {
    throw std::invalid_argument("Hankel table needs m >= 1 and x_max > 0");
  }
  HankelTable t;
  t.m_zeros = m_zeros;
  t.x_max = x_max;
  t.zeros = j0_zeros(m_zeros);
  t.weights.resize(m_zeros);
  for (int s = 0; s < m_zeros; ++s) {
    const double j1 = bessel_j1(t.zeros[s]);
    t.weights[s] = 2.0 / (x_max * x_max * j1 * j1);
  }
  return t;
}

AnalyticOracle::AnalyticOracle(GaussianInit init, double sound_speed,
                               int m_zeros, double x_max)
    : init_(init), c_(sound_speed), m_requested_(m_zeros) {
  if (!(init.mu > 0.0)) {
    throw std::invalid_argument("Gaussian width parameter mu must be > 0");
  }
  if (!(sound_speed > 0.0)) {
    throw std::invalid_argument("sound speed must be > 0");
  }
  table_ = HankelTable::make(m_zeros, x_max);
  rebuild();
}

void AnalyticOracle::rebuild() {
  const double scale = init_.kappa / (2.0 * init_.mu);
  const int m = table_.m_zeros;
  wavenumbers_.resize(m);
  coeff_.resize(m);
  double largest = 0.0;
  for (int s = 0; s < m; ++s) {
    const double k = table_.zeros[s] / table_.x_max;
    wavenumbers_[s] = k;
    coeff_[s] =
        table_.weights[s] * scale * std::exp(-k * k / (4.0 * init_.mu));
    largest = std::max(largest, std::abs(coeff_[s]));
  }
  // The Gaussian factor kills the spectrum: drop the negligible tail so
  // point evaluations cost a few dozen Bessel calls, not m_zeros of them.
  int keep = m;
  while (keep > 1 && std::abs(coeff_[keep - 1]) < 1e-30 * largest) --keep;
  coeff_.resize(keep);
  wavenumbers_.resize(keep);
}

double AnalyticOracle::pressure(double t, double r) const {
  if (!(r >= 0.0)) {
    throw std::domain_error("radius must be >= 0");
  }
  if (r > table_.x_max) {
    throw std::domain_error("radius " + std::to_string(r) +
                            " outside the transform interval [0, " +
                            std::to_string(table_.x_max) +
                            "]; call ensure_radius first");
  }
  double sum = 0.0;
  for (std::size_t s = 0; s < coeff_.size(); ++s) {
    sum += coeff_[s] * std::cos(c_ * wavenumbers_[s] * t) *
           bessel_j0(wavenumbers_[s] * r);
  }
  return sum;
}

void AnalyticOracle::ensure_radius(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw std::domain_error("radius must be finite and >= 0");
  }
  bool grown = false;
  int m = table_.m_zeros;
  double x = table_.x_max;
  while (r > x) {
    x *= 2.0;
    m *= 2;  // keep the resolved wavenumber range z_m / x unchanged
    grown = true;
  }
  if (grown) {
    std::cerr << "analytic oracle: radius " << r
              << " exceeds the transform interval; growing x_max to " << x
              << " (" << m << " modes)\n";
    table_ = HankelTable::make(m, x);
    rebuild();
  }
}

std::vector<double> AnalyticOracle::profile(
    double t, const std::vector<double>& radii) const {
  // Hoist the time factor: per radius only the J0 calls remain.
  std::vector<double> phase(coeff_.size());
  for (std::size_t s = 0; s < coeff_.size(); ++s) {
    phase[s] = coeff_[s] * std::cos(c_ * wavenumbers_[s] * t);
  }
  std::vector<double> out(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    if (!(r >= 0.0) || r > table_.x_max) {
      throw std::domain_error("profile radius outside [0, x_max]");
    }
    double sum = 0.0;
    for (std::size_t s = 0; s < phase.size(); ++s) {
      sum += phase[s] * bessel_j0(wavenumbers_[s] * r);
    }
    out[i] = sum;
  }
  return out;
}

AcousticState analytic_field(AnalyticOracle& oracle, const Grid& grid,
                             double t) {
  const double corner = grid.half_extent - 0.5 * grid.delta;
  oracle.ensure_radius(std::sqrt(2.0) * corner);
  AcousticState s = AcousticState::zeros(grid);
  // The grid has ~n^2/8 distinct radii (8-fold symmetry); cache per exact
  // bit pattern so every node with the same radius reuses one evaluation.
  std::unordered_map<std::uint64_t, double> cache;
  cache.reserve(grid.size() / 4);
  for (int j = 0; j < grid.n; ++j) {
    const double y = grid.coord(j);
    for (int i = 0; i < grid.n; ++i) {
      const double x = grid.coord(i);
      const double r = std::sqrt(x * x + y * y);
      const std::uint64_t key = std::bit_cast<std::uint64_t>(r);
      auto [it, fresh] = cache.try_emplace(key, 0.0);
      if (fresh) it->second = oracle.pressure(t, r);
      s.p(i, j) = it->second;
    }
  }
  return s;
}

}  // namespace kinwave
