#include "kinwave/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "kinwave/kinetic.hpp"
#include "kinwave/reference.hpp"

namespace kinwave {

namespace {

// Compensated (Neumaier) accumulator for long sums of small terms.
struct Accumulator {
  double sum = 0.0, comp = 0.0;

  void add(double term) {
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
  }
  double total() const { return sum + comp; }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kinetic:
      return "kinetic";
    case Scheme::yee:
      return "yee";
    case Scheme::fv1:
      return "fv1";
    case Scheme::fv2:
      return "fv2";
  }
  throw std::logic_error("unhandled scheme enumerator");
}

Scheme parse_scheme(const std::string& name) {
  for (Scheme s : {Scheme::kinetic, Scheme::yee, Scheme::fv1, Scheme::fv2}) {
    if (name == scheme_name(s)) return s;
  }
  throw std::invalid_argument("unknown scheme '" + name +
                              "'; expected kinetic, yee, fv1 or fv2");
}

void ExperimentConfig::validate() const {
  if (deltas.empty()) {
    throw std::invalid_argument("refinement ladder is empty");
  }
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0)) {
      throw std::invalid_argument("ladder spacings must be > 0");
    }
    if (i > 0 && !(deltas[i] < deltas[i - 1])) {
      throw std::invalid_argument("ladder spacings must strictly decrease");
    }
  }
  if (!(sound_speed > 0.0) || !(init.mu > 0.0) || !(half_extent > 0.0) ||
      !(disc_radius > 0.0) || !(t_horizon > 0.0)) {
    throw std::invalid_argument(
        "sound speed, mu, half extent, disc radius and horizon must be > 0");
  }
  if (!(omega >= 1.0 && omega <= 2.0)) {
    throw std::invalid_argument("relaxation rate omega must lie in [1, 2]");
  }
  // On the periodic cell the wave re-enters from the opposite side; keep the
  // comparison disc outside the range of those images up to the horizon.
  if (disc_radius + sound_speed * t_horizon > half_extent + 1e-12) {
    throw std::invalid_argument(
        "disc_radius + c * t_horizon exceeds half_extent: periodic images "
        "would reach the comparison disc");
  }
}

double l2_error_on_disc(const AcousticState& numeric,
                        const AcousticState& exact, double radius) {
  if (!(numeric.grid == exact.grid)) {
    throw std::invalid_argument("error norm needs both fields on one grid");
  }
  const Grid& g = numeric.grid;
  const double r2 = radius * radius;
  Accumulator acc;
  for (int j = 0; j < g.n; ++j) {
    const double y = g.coord(j);
    for (int i = 0; i < g.n; ++i) {
      const double x = g.coord(i);
      if (x * x + y * y <= r2) {
        const double d = numeric.p(i, j) - exact.p(i, j);
        acc.add(d * d);
      }
    }
  }
  return g.delta * std::sqrt(acc.total());
}

double fit_slope(const std::vector<ConvergenceRow>& rows) {
  std::vector<double> xs, ys;
  for (const ConvergenceRow& row : rows) {
    if (!row.blew_up && std::isfinite(row.l2_error) && row.l2_error > 0.0) {
      xs.push_back(std::log(row.delta));
      ys.push_back(std::log(row.l2_error));
    }
  }
  if (xs.size() < 2) {
    throw std::invalid_argument(
        "slope fit needs at least two completed refinement levels");
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

ConvergenceReport run_convergence(const ExperimentConfig& config) {
  config.validate();
  ConvergenceReport rep;
  rep.scheme_label = scheme_name(config.scheme);
  rep.omega = config.omega;

  KineticParams params = config.params;
  if (config.scheme == Scheme::kinetic) {
    if (config.preset) {
      params = preset(*config.preset, config.sound_speed);
      rep.preset_label = std::string(preset_name(*config.preset));
    } else {
      rep.preset_label = "custom";
    }
    params.omega = config.omega;
  } else {
    rep.preset_label = "-";
  }

  AnalyticOracle oracle(config.init, config.sound_speed);
  for (double delta : config.deltas) {
    const Grid grid = Grid::make(delta, config.half_extent);
    const AcousticState q0 =
        gaussian_pressure(grid, config.init.kappa, config.init.mu);
    // Kinetic runs on its lattice step k = delta/lambda; the references run
    // at Courant number 1/2, i.e. k = delta/(2c).
    const double step_speed = config.scheme == Scheme::kinetic
                                  ? params.lambda
                                  : 2.0 * config.sound_speed;
    const TimeGrid tg = make_time_grid(delta, step_speed, config.t_horizon);

    ConvergenceRow row;
    row.delta = delta;
    row.n_steps = tg.n_steps;
    row.t_reached = tg.t_final;

    const auto t0 = std::chrono::steady_clock::now();
    AcousticState numeric = AcousticState::zeros(grid);
    switch (config.scheme) {
      case Scheme::kinetic: {
        const MaxwellianSet ms = build(params);
        const RunResult rr = run(q0, ms, config.omega, tg.n_steps);
        numeric = rr.state;
        row.blew_up = rr.blew_up;
        break;
      }
      case Scheme::yee: {
        StaggeredState ss = yee_init(q0, 0.5);
        for (long s = 0; s < tg.n_steps; ++s) yee_step(ss, 0.5);
        numeric = collocate(ss);
        break;
      }
      case Scheme::fv1: {
        AcousticState state = q0;
        for (long s = 0; s < tg.n_steps; ++s) state = fv1_step(state, 0.5);
        numeric = std::move(state);
        break;
      }
      case Scheme::fv2: {
        AcousticState state = q0;
        for (long s = 0; s < tg.n_steps; ++s) state = fv2_step(state, 0.5);
        numeric = std::move(state);
        break;
      }
    }
    row.wall_time_s = config.record_timings ? seconds_since(t0) : 0.0;

    const AcousticState exact = analytic_field(oracle, grid, tg.t_final);
    row.l2_error = l2_error_on_disc(numeric, exact, config.disc_radius);
    rep.rows.push_back(row);
  }

  try {
    rep.slope = fit_slope(rep.rows);
    rep.slope_valid = true;
  } catch (const std::invalid_argument&) {
    rep.slope = std::numeric_limits<double>::quiet_NaN();
    rep.slope_valid = false;
  }
  return rep;
}

std::vector<StabilityRow> run_stability_scan(
    const ExperimentConfig& base, const std::vector<double>& lambda_over_c,
    const std::vector<double>& omegas, double delta, long max_steps) {
  if (lambda_over_c.empty() || omegas.empty() || max_steps < 1) {
    throw std::invalid_argument(
        "stability scan needs lattice-speed ratios, rates and steps >= 1");
  }
  const Grid grid = Grid::make(delta, base.half_extent);
  const AcousticState q0 =
      gaussian_pressure(grid, base.init.kappa, base.init.mu);

  std::vector<StabilityRow> rows;
  for (double ratio : lambda_over_c) {
    for (double om : omegas) {
      KineticParams p = base.preset
                            ? preset(*base.preset, base.sound_speed)
                            : base.params;
      p.c = base.sound_speed;
      p.lambda = ratio * base.sound_speed;
      p.omega = om;

      StabilityRow row;
      row.lambda_over_c = ratio;
      row.omega = om;
      row.admissible = check_admissible(p).pass;

      const MaxwellianSet ms = build(p);
      const RunResult rr = run(q0, ms, om, max_steps);
      row.blew_up = rr.blew_up;
      row.steps_done = rr.steps_done;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ConvergenceReport>& reports,
               bool with_timings) {
  out << "scheme,preset,omega,delta,n_steps,l2_error,wall_time_s,slope\n";
  for (const ConvergenceReport& rep : reports) {
    for (const ConvergenceRow& row : rep.rows) {
      out << rep.scheme_label << ',' << rep.preset_label << ','
          << fmt(rep.omega) << ',' << fmt(row.delta) << ',' << row.n_steps
          << ',' << fmt(row.l2_error) << ','
          << fmt(with_timings ? row.wall_time_s : 0.0) << ','
          << fmt(rep.slope) << '\n';
    }
  }
}

void write_stability_csv(std::ostream& out,
                         const std::vector<StabilityRow>& rows) {
  out << "lambda_over_c,omega,admissible,blew_up,steps_done\n";
  for (const StabilityRow& row : rows) {
    out << fmt(row.lambda_over_c) << ',' << fmt(row.omega) << ','
        << (row.admissible ? 1 : 0) << ',' << (row.blew_up ? 1 : 0) << ','
        << row.steps_done << '\n';
  }
}

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
                                    "#bcbd22", "#e377c2"};

}  // namespace

void write_svg(std::ostream& out,
               const std::vector<ConvergenceReport>& reports) {
  // Collect the log-log extent of everything plottable.
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const ConvergenceReport& rep : reports) {
    for (const ConvergenceRow& row : rep.rows) {
      if (row.blew_up || !(row.l2_error > 0.0) ||
          !std::isfinite(row.l2_error)) {
        continue;
      }
      const double x = std::log10(row.delta);
      const double y = std::log10(row.l2_error);
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmin > xmax) {  // nothing plottable; keep the document well-formed
    xmin = -2.0;
    xmax = -1.0;
    ymin = -2.0;
    ymax = -1.0;
  }
  if (xmax - xmin < 1e-12) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax - ymin < 1e-12) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double padx = 0.06 * (xmax - xmin);
  const double pady = 0.08 * (ymax - ymin);
  xmin -= padx;
  xmax += padx;
  ymin -= pady;
  ymax += pady;

  const double left = 76, top = 28, width = 470, height = 430;
  const double legend_x = left + width + 22;
  auto px = [&](double x) {
    return left + (x - xmin) / (xmax - xmin) * width;
  };
  auto py = [&](double y) {
    return top + (ymax - y) / (ymax - ymin) * height;
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"780\" "
         "height=\"520\" viewBox=\"0 0 780 520\">\n"
      << "<rect width=\"780\" height=\"520\" fill=\"white\"/>\n"
      << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\">\n"
      << "<text x=\"" << left + width / 2
      << "\" y=\"506\" text-anchor=\"middle\">grid spacing "
         "&#916;</text>\n"
      << "<text x=\"16\" y=\"" << top + height / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << top + height / 2 << ")\">L2 error on the disc</text>\n";

  // Frame and decade ticks.
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width
      << "\" height=\"" << height
      << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  for (int d = static_cast<int>(std::ceil(xmin)); d <= std::floor(xmax); ++d) {
    const double x = px(d);
    out << "<line x1=\"" << x << "\" y1=\"" << top << "\" x2=\"" << x
        << "\" y2=\"" << top + height
        << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n"
        << "<text x=\"" << x << "\" y=\"" << top + height + 18
        << "\" text-anchor=\"middle\">1e" << d << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(ymin)); d <= std::floor(ymax); ++d) {
    const double y = py(d);
    out << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\""
        << left + width << "\" y2=\"" << y
        << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n"
        << "<text x=\"" << left - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\">1e" << d << "</text>\n";
  }

  // Reference slopes anchored at the lower-left of the data box.
  for (int slope : {1, 2}) {
    const double x0 = xmin + 0.12 * (xmax - xmin);
    const double x1 = x0 + 0.2 * (xmax - xmin);
    const double y0 = ymin + 0.12 * (ymax - ymin);
    out << "<line x1=\"" << px(x0) << "\" y1=\"" << py(y0) << "\" x2=\""
        << px(x1) << "\" y2=\"" << py(y0 + slope * (x1 - x0))
        << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n"
        << "<text x=\"" << px(x1) + 4 << "\" y=\""
        << py(y0 + slope * (x1 - x0)) << "\" fill=\"#777\">slope " << slope
        << "</text>\n";
  }

  // One polyline (and legend row) per report.
  int color_idx = 0;
  double legend_y = top + 12;
  for (const ConvergenceReport& rep : reports) {
    const char* color = kPalette[color_idx % std::size(kPalette)];
    ++color_idx;
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.6\" points=\"";
    for (const ConvergenceRow& row : rep.rows) {
      if (row.blew_up || !(row.l2_error > 0.0) ||
          !std::isfinite(row.l2_error)) {
        continue;
      }
      out << px(std::log10(row.delta)) << ','
          << py(std::log10(row.l2_error)) << ' ';
    }
    out << "\"/>\n";
    for (const ConvergenceRow& row : rep.rows) {
      if (row.blew_up || !(row.l2_error > 0.0) ||
          !std::isfinite(row.l2_error)) {
        continue;
      }
      out << "<circle cx=\"" << px(std::log10(row.delta)) << "\" cy=\""
          << py(std::log10(row.l2_error)) << "\" r=\"2.6\" fill=\"" << color
          << "\"/>\n";
    }
    char slope_txt[64];
    if (rep.slope_valid) {
      std::snprintf(slope_txt, sizeof slope_txt, "slope %.2f", rep.slope);
    } else {
      std::snprintf(slope_txt, sizeof slope_txt, "slope n/a");
    }
    out << "<line x1=\"" << legend_x << "\" y1=\"" << legend_y - 4
        << "\" x2=\"" << legend_x + 22 << "\" y2=\"" << legend_y - 4
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << legend_x + 28 << "\" y=\"" << legend_y << "\">"
        << rep.scheme_label;
    if (rep.preset_label != "-") out << " " << rep.preset_label;
    out << " &#969;=" << fmt(rep.omega) << ", " << slope_txt << "</text>\n";
    legend_y += 18;
  }
  out << "</g>\n</svg>\n";
}

}  // namespace kinwave
