#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fluctwell/analysis.hpp"
#include "fluctwell/cli.hpp"
#include "fluctwell/closed_form.hpp"
#include "fluctwell/constants.hpp"
#include "fluctwell/emit.hpp"
#include "fluctwell/kernels.hpp"

namespace fluctwell::cli {

using nlohmann::json;

namespace {

struct Flags {
  std::string config_path;
  double sigma = 0;
  std::string x_over_abar;
  int x_points = 0;
  double omega_t_start = 0;
  double omega_t_max = 0;
  int steps = 0;
  double omega_t = 0;
  int quad_nodes = 0;
  std::int64_t mc_samples = 0;
  std::uint64_t seed = 0;
  std::string format;
  std::string output;
  int k_max = 0;
  std::string unit_mode;
  double a_bar = 0;
  double mass = 0;
  double boundary_mass_amu = 0;
  double boundary_omega0 = 0;
  int threads = 0;

  std::map<std::string, CLI::Option*> opts;
  bool given(const std::string& name) const {
    auto it = opts.find(name);
    return it != opts.end() && it->second->count() > 0;
  }
};

void register_flags(CLI::App& app, Flags& f) {
  auto add = [&](const std::string& name, auto& var, const std::string& help) {
    f.opts[name] = app.add_option("--" + name, var, help);
  };
  add("config", f.config_path, "JSON configuration document");
  add("sigma", f.sigma, "relative width fluctuation sigma (0 = fixed boundaries)");
  add("x-over-abar", f.x_over_abar, "position x/a_bar, or a comma-separated list");
  add("x-points", f.x_points, "profile: N evenly spaced interior positions i/(N+1)");
  add("omega-t-start", f.omega_t_start, "first time, as omega_bar*t");
  add("omega-t-max", f.omega_t_max, "last time, as omega_bar*t");
  add("steps", f.steps, "number of time steps (>= 2)");
  add("omega-t", f.omega_t, "profile snapshot time, as omega_bar*t");
  add("quad-nodes", f.quad_nodes, "Gauss-Hermite node count (>= 16)");
  add("mc-samples", f.mc_samples, "Monte-Carlo samples per point (>= 100)");
  add("seed", f.seed, "Monte-Carlo seed (overrides FLUCTWELL_SEED)");
  f.opts["format"] =
      app.add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  add("output", f.output, "output path (default stdout)");
  add("k-max", f.k_max, "envelope: last extremum index");
  f.opts["unit-mode"] = app.add_option("--unit-mode", f.unit_mode, "dimensionless or physical")
                            ->check(CLI::IsMember({"dimensionless", "physical"}));
  add("a-bar", f.a_bar, "physical mode: mean width in metres");
  add("mass", f.mass, "physical mode: particle mass in kg");
  add("boundary-mass-amu", f.boundary_mass_amu, "boundary oscillator mass in amu");
  add("boundary-omega0", f.boundary_omega0, "boundary oscillator angular frequency in 1/s");
  add("threads", f.threads, "OpenMP threads (0 = runtime default)");
}

json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
}

std::uint64_t parse_seed(const std::string& text, const std::string& field) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError(field, "expected a non-negative integer, got '" + text + "'");
  }
  errno = 0;
  const unsigned long long v = std::strtoull(text.c_str(), nullptr, 10);
  if (errno == ERANGE) throw ConfigError(field, "out of range");
  return v;
}

// config file < environment < flags
RunConfig resolve_config(const Flags& f, const EnvLookup& env) {
  RunConfig cfg;
  if (f.given("config")) cfg = apply_config_json(read_config_file(f.config_path), cfg);

  if (auto s = env("FLUCTWELL_SEED")) cfg.mc.seed = parse_seed(*s, "FLUCTWELL_SEED");

  if (f.given("sigma")) {
    try {
      cfg.noise = NoiseModel(f.sigma);
    } catch (const DomainError& e) {
      throw ConfigError("noise.sigma", e.what());
    }
  }
  if (f.given("x-over-abar")) cfg.x_over_abar = parse_number_list(f.x_over_abar, "x_over_abar");
  if (f.given("x-points")) {
    if (f.x_points < 1) throw ConfigError("x_points", "must be >= 1");
    std::vector<double> xs;
    for (int i = 1; i <= f.x_points; ++i) xs.push_back(double(i) / (f.x_points + 1));
    cfg.x_over_abar = std::move(xs);
  }
  if (f.given("omega-t-start")) cfg.omega_t.start = f.omega_t_start;
  if (f.given("omega-t-max")) cfg.omega_t.stop = f.omega_t_max;
  if (f.given("steps")) cfg.omega_t.steps = f.steps;
  if (f.given("omega-t")) cfg.omega_t_snapshot = f.omega_t;
  if (f.given("quad-nodes")) cfg.quad.nodes = f.quad_nodes;
  if (f.given("mc-samples")) cfg.mc.samples = f.mc_samples;
  if (f.given("seed")) cfg.mc.seed = f.seed;
  if (f.given("format")) cfg.format = f.format == "json" ? Format::json : Format::csv;
  if (f.given("output")) cfg.output_path = f.output;
  if (f.given("k-max")) cfg.k_max = f.k_max;
  if (f.given("threads")) cfg.threads = f.threads;

  if (f.given("unit-mode") || f.given("a-bar") || f.given("mass")) {
    const bool physical = f.given("unit-mode") ? f.unit_mode == "physical"
                                               : cfg.well.unit_mode() == UnitMode::physical;
    if (!physical) {
      if (f.given("a-bar") || f.given("mass")) {
        throw ConfigError("well", "--a-bar and --mass need --unit-mode physical");
      }
      cfg.well = WellConfig::dimensionless();
    } else {
      const bool was_physical = cfg.well.unit_mode() == UnitMode::physical;
      const double a_bar = f.given("a-bar") ? f.a_bar : (was_physical ? cfg.well.a_bar() : constants::angstrom);
      const double mass = f.given("mass") ? f.mass : (was_physical ? cfg.well.mass() : constants::electron_mass);
      const double hbar = was_physical ? cfg.well.hbar() : constants::hbar;
      try {
        cfg.well = WellConfig::physical(a_bar, mass, hbar);
      } catch (const DomainError& e) {
        throw ConfigError("well", e.what());
      }
    }
  }

  if (f.given("boundary-mass-amu") || f.given("boundary-omega0")) {
    BoundaryOscillator osc = cfg.boundary.value_or(BoundaryOscillator{});
    if (f.given("boundary-mass-amu")) osc.mass_amu = f.boundary_mass_amu;
    if (f.given("boundary-omega0")) osc.omega0 = f.boundary_omega0;
    cfg.boundary = osc;
  }

  cfg.validate();
  return cfg;
}

Format report_format(const RunConfig& cfg, const std::string& command) {
  if (cfg.format == Format::csv) {
    throw ConfigError("format", command + " emits a JSON report; csv is not available");
  }
  return Format::json;
}

json envelope_header(const char* command, const RunConfig& cfg) {
  return json{{"schema_version", schema_version}, {"command", command}, {"config", config_to_json(cfg)}};
}

void emit_json(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

EvaluationOptions evaluation_options(const RunConfig& cfg) {
  EvaluationOptions opts;
  opts.quad = cfg.quad;
  opts.mc = cfg.mc;
  return opts;
}

void cmd_evolve(const RunConfig& cfg, std::ostream& out) {
  const std::vector<double> xs = cfg.x_over_abar.value_or(std::vector<double>{0.7});
  if (xs.size() != 1) throw ConfigError("x_over_abar", "evolve needs a single position");
  const double omega_bar = bohr_frequency(cfg.spec, cfg.well.a_bar(), cfg.well);
  const double a_bar = cfg.well.a_bar();

  std::vector<EvalPoint> points(std::size_t(cfg.omega_t.steps));
  const double span = cfg.omega_t.stop - cfg.omega_t.start;
  for (int i = 0; i < cfg.omega_t.steps; ++i) {
    const double wt = i + 1 == cfg.omega_t.steps
                          ? cfg.omega_t.stop
                          : cfg.omega_t.start + span * double(i) / double(cfg.omega_t.steps - 1);
    points[std::size_t(i)] = {xs.front() * a_bar, wt / omega_bar};
  }
  const auto records = evaluate_records(cfg.spec, points, cfg.noise, evaluation_options(cfg), cfg.well,
                                        cfg.threads);
  // Report the requested abscissa exactly rather than ω̄·(ωt/ω̄).
  std::vector<DensityRecord> rows = records;
  for (int i = 0; i < cfg.omega_t.steps; ++i) {
    rows[std::size_t(i)].omega_t =
        i + 1 == cfg.omega_t.steps ? cfg.omega_t.stop
                                   : cfg.omega_t.start + span * double(i) / double(cfg.omega_t.steps - 1);
  }

  if (cfg.format.value_or(Format::csv) == Format::csv) {
    write_density_csv(out, rows, a_bar, false);
  } else {
    json doc = envelope_header("evolve", cfg);
    doc["records"] = density_records_json(rows, a_bar);
    emit_json(out, doc);
  }
}

void cmd_profile(const RunConfig& cfg, std::ostream& out) {
  const std::vector<double> xs = cfg.x_over_abar.value_or(std::vector<double>{0.7});
  const double omega_bar = bohr_frequency(cfg.spec, cfg.well.a_bar(), cfg.well);
  const double a_bar = cfg.well.a_bar();
  std::vector<EvalPoint> points;
  for (double x : xs) points.push_back({x * a_bar, cfg.omega_t_snapshot / omega_bar});
  std::vector<DensityRecord> rows = evaluate_records(cfg.spec, points, cfg.noise,
                                                     evaluation_options(cfg), cfg.well, cfg.threads);
  for (auto& r : rows) r.omega_t = cfg.omega_t_snapshot;

  if (cfg.format.value_or(Format::csv) == Format::csv) {
    write_density_csv(out, rows, a_bar, true);
  } else {
    json doc = envelope_header("profile", cfg);
    doc["records"] = density_records_json(rows, a_bar);
    emit_json(out, doc);
  }
}

void cmd_envelope(const RunConfig& cfg, std::ostream& out) {
  report_format(cfg, "envelope");
  const std::vector<double> xs = cfg.x_over_abar.value_or(std::vector<double>{0.7});
  if (xs.size() != 1) throw ConfigError("x_over_abar", "envelope needs a single position");
  const int k_max = cfg.k_max.value_or(default_envelope_k_max(cfg.spec, cfg.noise, cfg.well));
  const auto samples = extract_envelope(cfg.spec, xs.front() * cfg.well.a_bar(), cfg.noise, cfg.quad,
                                        cfg.well, k_max, cfg.threads);
  const FitResult fit = fit_gamma(samples);
  const DecayParameters decay = decay_parameters(cfg.spec, cfg.noise, cfg.well);

  json doc = envelope_header("envelope", cfg);
  doc["x_over_abar"] = xs.front();
  doc["k_max"] = k_max;
  doc.update(envelope_json(samples, fit, decay, decay.omega_bar));
  emit_json(out, doc);
}

void cmd_timescales(const RunConfig& cfg, std::ostream& out) {
  report_format(cfg, "timescales");
  const DecayParameters decay = decay_parameters(cfg.spec, cfg.noise, cfg.well);
  const bool physical = cfg.well.unit_mode() == UnitMode::physical;
  constexpr double suppression_omega_t = 200.0;

  json doc = envelope_header("timescales", cfg);
  doc["unit_mode"] = physical ? "physical" : "dimensionless";
  doc["sigma"] = cfg.noise.sigma();
  doc["omega_bar"] = decay.omega_bar;
  doc["t_onset"] = decay.t_onset;
  doc["t_decay"] = std::isfinite(decay.t_decay) ? json(decay.t_decay) : json(nullptr);
  doc["gamma"] = decay.gamma;
  doc["suppression_omega_t"] = suppression_omega_t;
  doc["suppression_time"] = suppression_omega_t / decay.omega_bar;

  if (cfg.boundary) {
    if (!physical) throw ConfigError("boundary", "boundary oscillator estimates need well.unit_mode = physical");
    const double mass = cfg.boundary->mass_amu * constants::atomic_mass_unit;
    double dx = 0.0;
    try {
      dx = boundary_width_estimate(mass, cfg.boundary->omega0, cfg.well);
    } catch (const DomainError& e) {
      throw ConfigError("boundary", e.what());
    }
    doc["boundary"] = {{"mass_amu", cfg.boundary->mass_amu},
                       {"mass_kg", mass},
                       {"omega0", cfg.boundary->omega0},
                       {"delta_x", dx},
                       {"sigma_estimate", sigma_from_boundary_width(dx, cfg.well)}};
  }
  emit_json(out, doc);
}

void cmd_compare(const RunConfig& cfg, std::ostream& out) {
  report_format(cfg, "compare");
  const std::vector<double> xs = cfg.x_over_abar.value_or(std::vector<double>{0.2, 0.5, 0.7});
  const double omega_bar = bohr_frequency(cfg.spec, cfg.well.a_bar(), cfg.well);
  std::vector<EvalPoint> grid;
  for (double x : xs) {
    for (double wt : {0.0, 10.0, 50.0, 100.0, 200.0}) {
      grid.push_back({x * cfg.well.a_bar(), wt / omega_bar});
    }
  }
  const DeviationReport report =
      compare_paths(cfg.spec, grid, cfg.noise, cfg.quad, cfg.mc, cfg.well, cfg.threads);
  json doc = envelope_header("compare", cfg);
  doc.update(deviation_report_json(report, cfg.well.a_bar()));
  emit_json(out, doc);
}

}  // namespace

std::optional<std::string> process_env(const std::string& name) {
  if (const char* v = std::getenv(name.c_str())) return std::string(v);
  return std::nullopt;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env) {
  CLI::App app{"Ensemble-averaged density of a particle in a box with fluctuating walls", "fluctwell"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  register_flags(app, flags);

  using Command = void (*)(const RunConfig&, std::ostream&);
  const std::vector<std::tuple<const char*, const char*, Command>> commands = {
      {"evolve", "time series of the averaged density at one position", cmd_evolve},
      {"profile", "averaged density over positions at one time", cmd_profile},
      {"envelope", "interference envelope and decay-rate fit", cmd_envelope},
      {"timescales", "onset/decay timescales and boundary estimates", cmd_timescales},
      {"compare", "exact vs approximate vs Monte-Carlo deviation report", cmd_compare},
  };
  std::map<CLI::App*, Command> dispatch;
  for (const auto& [name, help, fn] : commands) dispatch[app.add_subcommand(name, help)] = fn;

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_validation;
  }

  try {
    const RunConfig cfg = resolve_config(flags, env);
    Command fn = nullptr;
    for (CLI::App* sub : app.get_subcommands()) fn = dispatch.at(sub);

    std::ostringstream buffer;
    fn(cfg, buffer);
    if (cfg.output_path) {
      std::ofstream file(*cfg.output_path, std::ios::binary | std::ios::trunc);
      if (!file) throw IoError("cannot open output file '" + *cfg.output_path + "'");
      file << buffer.str();
      if (!file.flush()) throw IoError("failed writing '" + *cfg.output_path + "'");
    } else {
      out << buffer.str();
      out.flush();
    }
    return exit_ok;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return exit_io;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return exit_numerical;
  } catch (const ConsistencyError& e) {
    err << "error: " << e.what() << '\n';
    return exit_numerical;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return exit_validation;
  }
}

}  // namespace fluctwell::cli
