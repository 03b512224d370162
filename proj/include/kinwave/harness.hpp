#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kinwave/analytic.hpp"
#include "kinwave/field.hpp"
#include "kinwave/maxwellian.hpp"

// Experiment drivers: grid-refinement convergence studies against the
// analytic solution, and stability scans over the lattice-speed /
// relaxation-rate plane.  Results are plain structs, serialized to CSV (and
// a log-log SVG plot) by the writers at the bottom.

namespace kinwave {

enum class Scheme { kinetic, yee, fv1, fv2 };

const char* scheme_name(Scheme s);
Scheme parse_scheme(const std::string& name);  // throws std::invalid_argument

struct ExperimentConfig {
  Scheme scheme = Scheme::kinetic;
  // Either a named preset or explicit kinetic parameters; used only when
  // scheme == kinetic.
  std::optional<Preset> preset;
  KineticParams params;

  double omega = 2.0;
  double sound_speed = 0.7071067811865476;  // 1/sqrt(2)
  GaussianInit init;
  double half_extent = 4.0;
  double disc_radius = 2.0;
  double t_horizon = 1.0;
  std::vector<double> deltas = {0.0625, 0.03125, 0.015625, 0.0078125};
  bool record_timings = true;

  // Rejects configurations whose comparison disc the wave can outrun
  // (periodic images arriving before t_horizon) and out-of-range rates.
  void validate() const;  // throws std::invalid_argument
};

struct ConvergenceRow {
  double delta = 0;
  long n_steps = 0;
  double t_reached = 0;
  double l2_error = 0;
  double wall_time_s = 0;
  bool blew_up = false;
};

struct ConvergenceReport {
  std::string scheme_label;  // "kinetic", "yee", "fv1", "fv2"
  std::string preset_label;  // preset name, or "-" for references
  double omega = 0;
  std::vector<ConvergenceRow> rows;
  double slope = 0;      // least-squares slope of log err vs log delta
  bool slope_valid = false;  // >= 2 rows survived without blow-up
};

// L2 norm of the pressure mismatch over the centred disc of the given
// radius: sqrt(delta^2 sum_{|a| <= radius} (p_num - p_exact)^2), compensated
// summation, nodes selected by cell-centre distance.
double l2_error_on_disc(const AcousticState& numeric,
                        const AcousticState& exact, double radius);

// Run the configured scheme over the refinement ladder.  The kinetic scheme
// steps with k = delta / lambda; the references use the fixed Courant number
// 1/2, k = delta / (2c).  Each level compares M0 f (or the collocated state)
// at t_reached = n_steps * k against the oracle at the same time.  Blown-up
// levels are flagged and excluded from the slope fit.
ConvergenceReport run_convergence(const ExperimentConfig& config);

// Least-squares slope of log(l2_error) against log(delta) over the rows that
// completed; throws std::invalid_argument with fewer than two usable rows.
double fit_slope(const std::vector<ConvergenceRow>& rows);

struct StabilityRow {
  double lambda_over_c = 0;
  double omega = 0;
  bool admissible = false;
  bool blew_up = false;
  long steps_done = 0;
};

// Sweep lambda/c and omega at fixed delta, running each combination for
// max_steps or until the blow-up monitor trips.  The kinetic parameters are
// taken from the base config with lambda overridden per column.
std::vector<StabilityRow> run_stability_scan(
    const ExperimentConfig& base, const std::vector<double>& lambda_over_c,
    const std::vector<double>& omegas, double delta, long max_steps);

// CSV with header scheme,preset,omega,delta,n_steps,l2_error,wall_time_s,slope
// and one row per refinement level; doubles printed with %.17g so files
// round-trip bit-exactly.  with_timings = false writes 0 for wall_time_s,
// making repeated runs byte-identical.
void write_csv(std::ostream& out, const std::vector<ConvergenceReport>& reports,
               bool with_timings);

void write_stability_csv(std::ostream& out,
                         const std::vector<StabilityRow>& rows);

// Self-contained log-log error plot: one polyline per report, legend with
// fitted slopes, reference triangles for slopes 1 and 2.
void write_svg(std::ostream& out, const std::vector<ConvergenceReport>& reports);

}  // namespace kinwave
