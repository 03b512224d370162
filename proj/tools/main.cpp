// kinwave: command-line front end for the vectorial kinetic acoustics
// solver and its reference schemes.
//
//   kinwave run             evolve one configuration, dump the final field
//   kinwave converge        grid-refinement study against the exact solution
//   kinwave stability-scan  sweep lambda/c and omega at fixed resolution
//   kinwave analytic        radial profile of the exact solution
//   kinwave presets         the built-in Maxwellian parameter catalogue
//
// Exit codes: 0 success, 1 bad arguments or configuration, 2 numerical
// failure (the blow-up monitor tripped).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kinwave/harness.hpp"
#include "kinwave/kinetic.hpp"
#include "kinwave/reference.hpp"

using namespace kinwave;

namespace {

constexpr int kExitBadConfig = 1;
constexpr int kExitBlowUp = 2;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Applies `key = value` lines from a config file to the options of the parsed
// subcommand. Blank lines and # comments are skipped; keys name long options
// without the leading dashes; options given explicitly on the command line
// keep precedence. (The CLI library only consults config files registered on
// the root command, and then with [section] grouping, so the flat per-command
// format is applied by hand after the parse.)
void apply_config_file(CLI::App* cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file '" + path + "'");
  }
  const auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto where = [&] {
      return path + ":" + std::to_string(lineno);
    };
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(where() + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    CLI::Option* op = cmd->get_option_no_throw("--" + key);
    if (op == nullptr) {
      throw std::invalid_argument(where() + ": unknown key '" + key +
                                  "' for subcommand " + cmd->get_name());
    }
    if (op->count() > 0) continue;  // an explicit flag wins over the file
    if (op->get_expected_max() > 1) {
      // List-valued options take whitespace- or comma-separated entries.
      std::string items = value;
      std::replace(items.begin(), items.end(), ',', ' ');
      std::istringstream split(items);
      for (std::string item; split >> item;) op->add_result(item);
    } else {
      op->add_result(value);
    }
    try {
      op->run_callback();
    } catch (const CLI::Error& e) {
      throw std::invalid_argument(where() + ": " + e.what());
    }
  }
}

// All output goes through a stream chosen by --out ("-" = stdout), so every
// subcommand can be piped or redirected the same way.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) {
        throw std::invalid_argument("cannot open output file '" + path + "'");
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct RunSettings {
  std::string scheme = "kinetic";
  std::string preset = "optimal";
  double omega = 2.0;
  double delta = 0.03125;
  double t_final = 1.0;
  double sound_speed = 0.7071067811865476;
  double kappa = 1.0;
  double mu = 2.0;
  double half_extent = 4.0;
  std::string out = "-";
};

void add_physics_options(CLI::App* cmd, RunSettings& s) {
  cmd->add_option("--c", s.sound_speed, "sound speed")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--kappa", s.kappa, "initial pressure amplitude")
      ->capture_default_str();
  cmd->add_option("--mu", s.mu, "initial pressure Gaussian decay rate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

// Evolve one configuration to t_final and return the collocated state; the
// single-resolution core of what `converge` repeats over the ladder.
AcousticState evolve(const RunSettings& s) {
  const Grid grid = Grid::make(s.delta, s.half_extent);
  const AcousticState q0 = gaussian_pressure(grid, s.kappa, s.mu);
  const Scheme scheme = parse_scheme(s.scheme);

  if (scheme == Scheme::kinetic) {
    const KineticParams params = [&] {
      KineticParams p = preset(parse_preset(s.preset), s.sound_speed);
      p.omega = s.omega;
      return p;
    }();
    const TimeGrid tg = make_time_grid(s.delta, params.lambda, s.t_final);
    const RunResult rr = run(q0, build(params), params.omega, tg.n_steps);
    if (rr.blew_up) {
      throw std::runtime_error(
          "blow-up monitor tripped after " + std::to_string(rr.steps_done) +
          " of " + std::to_string(tg.n_steps) + " steps");
    }
    return rr.state;
  }

  // References run at Courant number 1/2, k = delta / (2c).
  const TimeGrid tg =
      make_time_grid(s.delta, 2.0 * s.sound_speed, s.t_final);
  if (scheme == Scheme::yee) {
    StaggeredState st = yee_init(q0, 0.5);
    for (long n = 0; n < tg.n_steps; ++n) yee_step(st, 0.5);
    return collocate(st);
  }
  AcousticState q = q0;
  for (long n = 0; n < tg.n_steps; ++n) {
    q = scheme == Scheme::fv1 ? fv1_step(q, 0.5) : fv2_step(q, 0.5);
  }
  return q;
}

int cmd_run(const RunSettings& s) {
  const AcousticState state = evolve(s);
  OutputTarget target(s.out);
  std::ostream& out = target.stream();
  out << "x,y,v,w,p\n";
  const Grid& g = state.grid;
  for (int j = 0; j < g.n; ++j) {
    for (int i = 0; i < g.n; ++i) {
      out << fmt(g.coord(i)) << ',' << fmt(g.coord(j)) << ','
          << fmt(state.v(i, j)) << ',' << fmt(state.w(i, j)) << ','
          << fmt(state.p(i, j)) << '\n';
    }
  }
  return 0;
}

struct ConvergeSettings : RunSettings {
  std::string format = "csv";
  bool full_scale = false;
  bool no_timings = false;
  double disc_radius = 2.0;
};

int cmd_converge(const ConvergeSettings& s) {
  ExperimentConfig cfg;
  cfg.omega = s.omega;
  cfg.sound_speed = s.sound_speed;
  cfg.init = {s.kappa, s.mu};
  cfg.half_extent = s.half_extent;
  cfg.disc_radius = s.disc_radius;
  cfg.t_horizon = s.t_final;
  cfg.record_timings = !s.no_timings;
  if (s.full_scale) {
    cfg.deltas.push_back(0.00390625);
    cfg.deltas.push_back(0.001953125);
  }

  std::vector<ConvergenceReport> reports;
  if (s.scheme == "all") {
    // The full comparison table: every kinetic preset plus the references.
    cfg.scheme = Scheme::kinetic;
    for (Preset pr : kAllPresets) {
      cfg.preset = pr;
      reports.push_back(run_convergence(cfg));
    }
    cfg.preset.reset();
    for (Scheme ref : {Scheme::yee, Scheme::fv1, Scheme::fv2}) {
      cfg.scheme = ref;
      reports.push_back(run_convergence(cfg));
    }
  } else {
    cfg.scheme = parse_scheme(s.scheme);
    if (cfg.scheme == Scheme::kinetic) {
      cfg.preset = parse_preset(s.preset);
    }
    reports.push_back(run_convergence(cfg));
  }

  OutputTarget target(s.out);
  if (s.format == "svg") {
    write_svg(target.stream(), reports);
  } else {
    write_csv(target.stream(), reports, !s.no_timings);
  }
  for (const ConvergenceReport& rep : reports) {
    if (rep.slope_valid) continue;
    std::cerr << "warning: " << rep.scheme_label << " " << rep.preset_label
              << " has no valid slope (blow-up or degenerate errors)\n";
  }
  return 0;
}

struct ScanSettings : RunSettings {
  std::vector<double> ratios = {std::sqrt(2.0) - 0.1, std::sqrt(2.0) - 0.01,
                                std::sqrt(2.0), 1.5, 2.0};
  std::vector<double> omegas = {1.0, 1.5, 1.9, 2.0};
  long steps = 400;
};

int cmd_stability_scan(const ScanSettings& s) {
  ExperimentConfig base;
  base.scheme = Scheme::kinetic;
  base.preset = parse_preset(s.preset);
  base.sound_speed = s.sound_speed;
  base.init = {s.kappa, s.mu};
  base.half_extent = s.half_extent;
  const std::vector<StabilityRow> rows =
      run_stability_scan(base, s.ratios, s.omegas, s.delta, s.steps);
  OutputTarget target(s.out);
  write_stability_csv(target.stream(), rows);
  return 0;
}

struct AnalyticSettings {
  double t_final = 1.0;
  double sound_speed = 0.7071067811865476;
  double kappa = 1.0;
  double mu = 2.0;
  double radius = 2.0;
  int samples = 256;
  std::string out = "-";
};

int cmd_analytic(const AnalyticSettings& s) {
  AnalyticOracle oracle({s.kappa, s.mu}, s.sound_speed);
  oracle.ensure_radius(s.radius);
  std::vector<double> radii(s.samples + 1);
  for (int i = 0; i <= s.samples; ++i) {
    radii[i] = s.radius * i / s.samples;
  }
  const std::vector<double> values = oracle.profile(s.t_final, radii);
  OutputTarget target(s.out);
  std::ostream& out = target.stream();
  out << "r,p\n";
  for (std::size_t i = 0; i < radii.size(); ++i) {
    out << fmt(radii[i]) << ',' << fmt(values[i]) << '\n';
  }
  return 0;
}

int cmd_presets(double sound_speed) {
  std::printf("%-11s %9s %7s %5s %5s %7s %8s %11s\n", "preset", "lambda/c",
              "alpha", "beta", "x", "gamma", "J/c^4", "admissible");
  for (Preset pr : kAllPresets) {
    const KineticParams p = preset(pr, sound_speed);
    const double c4 = std::pow(sound_speed, 4);
    std::printf("%-11s %9.6f %7.4f %5.2f %5.2f %7.4f %8.3f %11s\n",
                std::string(preset_name(pr)).c_str(), p.lambda / sound_speed,
                p.alpha, p.beta, p.x, p.gamma,
                diffusion_objective(p.alpha, p.gamma, p.lambda, sound_speed) /
                    c4,
                check_admissible(p).pass ? "yes" : "no");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vectorial kinetic schemes for 2D linear acoustics"};
  app.require_subcommand(1);
  // Every subcommand accepts --config file with flat key=value lines
  // (# comments); explicit flags override file values.
  std::string config_path;
  const auto add_config = [&config_path](CLI::App* cmd) {
    cmd->add_option("--config", config_path,
                    "read options from a key = value file");
  };

  RunSettings run_s;
  CLI::App* run_cmd = app.add_subcommand("run", "evolve one configuration");
  add_config(run_cmd);
  run_cmd->add_option("--scheme", run_s.scheme, "kinetic, yee, fv1 or fv2")
      ->capture_default_str();
  run_cmd->add_option("--preset", run_s.preset, "Maxwellian preset")
      ->capture_default_str();
  run_cmd->add_option("--omega", run_s.omega, "relaxation rate in [1,2]")
      ->capture_default_str();
  run_cmd->add_option("--delta", run_s.delta, "grid spacing")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_cmd->add_option("--t-final", run_s.t_final, "time horizon")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_physics_options(run_cmd, run_s);
  run_cmd->add_option("--out", run_s.out, "output CSV path, - for stdout")
      ->capture_default_str();

  ConvergeSettings conv_s;
  CLI::App* conv_cmd =
      app.add_subcommand("converge", "grid-refinement convergence study");
  add_config(conv_cmd);
  conv_cmd
      ->add_option("--scheme", conv_s.scheme,
                   "kinetic, yee, fv1, fv2, or all")
      ->capture_default_str();
  conv_cmd->add_option("--preset", conv_s.preset, "Maxwellian preset")
      ->capture_default_str();
  conv_cmd->add_option("--omega", conv_s.omega, "relaxation rate in [1,2]")
      ->capture_default_str();
  conv_cmd->add_option("--t-final", conv_s.t_final, "time horizon")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  conv_cmd->add_option("--radius", conv_s.disc_radius, "comparison disc radius")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_physics_options(conv_cmd, conv_s);
  conv_cmd->add_option("--format", conv_s.format, "csv or svg")
      ->check(CLI::IsMember({"csv", "svg"}))
      ->capture_default_str();
  conv_cmd->add_flag("--full-scale", conv_s.full_scale,
                     "extend the ladder two further halvings");
  conv_cmd->add_flag("--no-timings", conv_s.no_timings,
                     "zero the wall-time column for reproducible files");
  conv_cmd->add_option("--out", conv_s.out, "output path, - for stdout")
      ->capture_default_str();

  ScanSettings scan_s;
  CLI::App* scan_cmd = app.add_subcommand(
      "stability-scan", "sweep lambda/c and omega at fixed spacing");
  add_config(scan_cmd);
  scan_cmd->add_option("--preset", scan_s.preset,
                       "base Maxwellian preset (lambda overridden per row)")
      ->capture_default_str();
  scan_cmd->add_option("--delta", scan_s.delta, "grid spacing")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scan_cmd->add_option("--ratios", scan_s.ratios,
                       "lambda/c values to test (default brackets sqrt(2))");
  scan_cmd->add_option("--omegas", scan_s.omegas, "relaxation rates to test");
  scan_cmd->add_option("--steps", scan_s.steps, "steps per combination")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_physics_options(scan_cmd, scan_s);
  scan_cmd->add_option("--out", scan_s.out, "output CSV path, - for stdout")
      ->capture_default_str();

  AnalyticSettings ana_s;
  CLI::App* ana_cmd =
      app.add_subcommand("analytic", "radial profile of the exact solution");
  add_config(ana_cmd);
  ana_cmd->add_option("--t-final", ana_s.t_final, "evaluation time")
      ->capture_default_str();
  ana_cmd->add_option("--c", ana_s.sound_speed, "sound speed")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ana_cmd->add_option("--kappa", ana_s.kappa, "initial pressure amplitude")
      ->capture_default_str();
  ana_cmd->add_option("--mu", ana_s.mu, "initial Gaussian decay rate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ana_cmd->add_option("--radius", ana_s.radius, "largest radius sampled")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ana_cmd->add_option("--samples", ana_s.samples, "number of radial intervals")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ana_cmd->add_option("--out", ana_s.out, "output CSV path, - for stdout")
      ->capture_default_str();

  double presets_c = 0.7071067811865476;
  CLI::App* presets_cmd =
      app.add_subcommand("presets", "print the Maxwellian preset catalogue");
  add_config(presets_cmd);
  presets_cmd->add_option("--c", presets_c, "sound speed")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help text, exit 0
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadConfig;
  }

  if (!config_path.empty()) {
    try {
      apply_config_file(app.get_subcommands().front(), config_path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitBadConfig;
    }
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_s);
    if (conv_cmd->parsed()) return cmd_converge(conv_s);
    if (scan_cmd->parsed()) return cmd_stability_scan(scan_s);
    if (ana_cmd->parsed()) return cmd_analytic(ana_s);
    if (presets_cmd->parsed()) return cmd_presets(presets_c);
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBlowUp;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadConfig;
  }
  return 0;
}
