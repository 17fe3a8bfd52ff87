#include <cmath>
#include <cstdlib>
#include <sstream>

#include "fluctwell/cli.hpp"
#include "fluctwell/constants.hpp"

namespace fluctwell::cli {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
}

void reject_unknown(const json& j, const std::string& path,
                    std::initializer_list<const char*> known) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError(join(path, key), "unknown field");
  }
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
  return v;
}

std::int64_t get_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<std::int64_t>();
}

Complex get_amplitude(const json& j, const std::string& path) {
  if (j.is_number()) return {get_number(j, path), 0.0};
  if (j.is_array() && j.size() == 2) {
    return {get_number(j[0], path + "[0]"), get_number(j[1], path + "[1]")};
  }
  throw ConfigError(path, "expected a number or [re, im]");
}

json amplitude_json(Complex c) { return json::array({c.real(), c.imag()}); }

template <class Fn>
auto rethrow_as_config(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text, const std::string& field) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end == item.c_str() || *end != '\0' || !std::isfinite(v)) {
      throw ConfigError(field, "cannot parse '" + item + "' as a number");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(field, "expected at least one value");
  return out;
}

void RunConfig::validate() const {
  rethrow_as_config("quadrature", [&] { quad.validate(); });
  rethrow_as_config("monte_carlo", [&] { mc.validate(); });
  if (omega_t.steps < 2) {
    throw ConfigError("omega_t.steps", "must be >= 2, got " + std::to_string(omega_t.steps));
  }
  if (!(omega_t.start < omega_t.stop)) throw ConfigError("omega_t", "start must be < stop");
  if (x_over_abar) {
    if (x_over_abar->empty()) throw ConfigError("x_over_abar", "expected at least one position");
    for (std::size_t i = 0; i < x_over_abar->size(); ++i) {
      const double x = (*x_over_abar)[i];
      if (!(x > 0.0 && x < 1.0)) {
        throw ConfigError("x_over_abar[" + std::to_string(i) + "]",
                          "must lie in the open interval (0, 1), got " + std::to_string(x));
      }
    }
  }
  if (k_max && *k_max < 4) throw ConfigError("envelope.k_max", "must be >= 4");
  if (threads < 0) throw ConfigError("threads", "must be >= 0");
  if (!std::isfinite(omega_t_snapshot)) throw ConfigError("omega_t_snapshot", "must be finite");
}

RunConfig apply_config_json(const json& doc, RunConfig base) {
  require_object(doc, "");
  reject_unknown(doc, "",
                 {"superposition", "noise", "quadrature", "monte_carlo", "well", "x_over_abar",
                  "omega_t", "omega_t_snapshot", "envelope", "boundary", "format", "output",
                  "threads"});
  RunConfig cfg = std::move(base);

  if (doc.contains("superposition")) {
    const json& s = doc["superposition"];
    require_object(s, "superposition");
    reject_unknown(s, "superposition", {"n_lo", "n_hi", "c_lo", "c_hi"});
    int n_lo = cfg.spec.n_lo();
    int n_hi = cfg.spec.n_hi();
    Complex c_lo = cfg.spec.c_lo();
    Complex c_hi = cfg.spec.c_hi();
    if (s.contains("n_lo")) n_lo = int(get_integer(s["n_lo"], "superposition.n_lo"));
    if (s.contains("n_hi")) n_hi = int(get_integer(s["n_hi"], "superposition.n_hi"));
    if (s.contains("c_lo")) c_lo = get_amplitude(s["c_lo"], "superposition.c_lo");
    if (s.contains("c_hi")) c_hi = get_amplitude(s["c_hi"], "superposition.c_hi");
    cfg.spec = rethrow_as_config("superposition", [&] { return SuperpositionSpec(n_lo, n_hi, c_lo, c_hi); });
  }

  if (doc.contains("noise")) {
    const json& n = doc["noise"];
    require_object(n, "noise");
    reject_unknown(n, "noise", {"sigma"});
    if (n.contains("sigma")) {
      const double sigma = get_number(n["sigma"], "noise.sigma");
      cfg.noise = rethrow_as_config("noise.sigma", [&] { return NoiseModel(sigma); });
    }
  }

  if (doc.contains("quadrature")) {
    const json& q = doc["quadrature"];
    require_object(q, "quadrature");
    reject_unknown(q, "quadrature", {"nodes", "convergence_rtol"});
    if (q.contains("nodes")) cfg.quad.nodes = int(get_integer(q["nodes"], "quadrature.nodes"));
    if (q.contains("convergence_rtol")) {
      cfg.quad.convergence_rtol = get_number(q["convergence_rtol"], "quadrature.convergence_rtol");
    }
  }

  if (doc.contains("monte_carlo")) {
    const json& m = doc["monte_carlo"];
    require_object(m, "monte_carlo");
    reject_unknown(m, "monte_carlo", {"samples", "seed"});
    if (m.contains("samples")) cfg.mc.samples = get_integer(m["samples"], "monte_carlo.samples");
    if (m.contains("seed")) {
      const json& s = m["seed"];
      if (!s.is_number_unsigned()) throw ConfigError("monte_carlo.seed", "expected a non-negative integer");
      cfg.mc.seed = s.get<std::uint64_t>();
    }
  }

  if (doc.contains("well")) {
    const json& w = doc["well"];
    require_object(w, "well");
    reject_unknown(w, "well", {"unit_mode", "a_bar", "mass", "hbar"});
    std::string mode = cfg.well.unit_mode() == UnitMode::physical ? "physical" : "dimensionless";
    if (w.contains("unit_mode")) {
      if (!w["unit_mode"].is_string()) throw ConfigError("well.unit_mode", "expected a string");
      mode = w["unit_mode"].get<std::string>();
    }
    if (mode == "dimensionless") {
      for (const char* k : {"a_bar", "mass", "hbar"}) {
        if (w.contains(k)) {
          throw ConfigError(join("well", k), "dimensionless mode fixes a_bar = mass = hbar = 1");
        }
      }
      cfg.well = WellConfig::dimensionless();
    } else if (mode == "physical") {
      double a_bar = constants::angstrom;
      double mass = constants::electron_mass;
      double hbar = constants::hbar;
      if (w.contains("a_bar")) a_bar = get_number(w["a_bar"], "well.a_bar");
      if (w.contains("mass")) mass = get_number(w["mass"], "well.mass");
      if (w.contains("hbar")) hbar = get_number(w["hbar"], "well.hbar");
      cfg.well = rethrow_as_config("well", [&] { return WellConfig::physical(a_bar, mass, hbar); });
    } else {
      throw ConfigError("well.unit_mode", "expected 'dimensionless' or 'physical', got '" + mode + "'");
    }
  }

  if (doc.contains("x_over_abar")) {
    const json& x = doc["x_over_abar"];
    std::vector<double> xs;
    if (x.is_array()) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        xs.push_back(get_number(x[i], "x_over_abar[" + std::to_string(i) + "]"));
      }
    } else {
      xs.push_back(get_number(x, "x_over_abar"));
    }
    cfg.x_over_abar = std::move(xs);
  }

  if (doc.contains("omega_t")) {
    const json& t = doc["omega_t"];
    require_object(t, "omega_t");
    reject_unknown(t, "omega_t", {"start", "stop", "steps"});
    if (t.contains("start")) cfg.omega_t.start = get_number(t["start"], "omega_t.start");
    if (t.contains("stop")) cfg.omega_t.stop = get_number(t["stop"], "omega_t.stop");
    if (t.contains("steps")) cfg.omega_t.steps = int(get_integer(t["steps"], "omega_t.steps"));
  }

  if (doc.contains("omega_t_snapshot")) {
    cfg.omega_t_snapshot = get_number(doc["omega_t_snapshot"], "omega_t_snapshot");
  }

  if (doc.contains("envelope")) {
    const json& e = doc["envelope"];
    require_object(e, "envelope");
    reject_unknown(e, "envelope", {"k_max"});
    if (e.contains("k_max")) cfg.k_max = int(get_integer(e["k_max"], "envelope.k_max"));
  }

  if (doc.contains("boundary")) {
    const json& b = doc["boundary"];
    require_object(b, "boundary");
    reject_unknown(b, "boundary", {"mass_amu", "omega0"});
    BoundaryOscillator osc = cfg.boundary.value_or(BoundaryOscillator{});
    if (b.contains("mass_amu")) osc.mass_amu = get_number(b["mass_amu"], "boundary.mass_amu");
    if (b.contains("omega0")) osc.omega0 = get_number(b["omega0"], "boundary.omega0");
    cfg.boundary = osc;
  }

  if (doc.contains("format")) {
    const json& f = doc["format"];
    const std::string v = f.is_string() ? f.get<std::string>() : "";
    if (v == "csv") {
      cfg.format = Format::csv;
    } else if (v == "json") {
      cfg.format = Format::json;
    } else {
      throw ConfigError("format", "expected 'csv' or 'json'");
    }
  }

  if (doc.contains("output")) {
    if (!doc["output"].is_string()) throw ConfigError("output", "expected a path string");
    cfg.output_path = doc["output"].get<std::string>();
  }

  if (doc.contains("threads")) cfg.threads = int(get_integer(doc["threads"], "threads"));

  return cfg;
}

json config_to_json(const RunConfig& cfg) {
  json j;
  j["superposition"] = {{"n_lo", cfg.spec.n_lo()},
                        {"n_hi", cfg.spec.n_hi()},
                        {"c_lo", amplitude_json(cfg.spec.c_lo())},
                        {"c_hi", amplitude_json(cfg.spec.c_hi())}};
  j["noise"] = {{"sigma", cfg.noise.sigma()}};
  j["quadrature"] = {{"nodes", cfg.quad.nodes}, {"convergence_rtol", cfg.quad.convergence_rtol}};
  j["monte_carlo"] = {{"samples", cfg.mc.samples}, {"seed", cfg.mc.seed}};
  if (cfg.well.unit_mode() == UnitMode::physical) {
    j["well"] = {{"unit_mode", "physical"},
                 {"a_bar", cfg.well.a_bar()},
                 {"mass", cfg.well.mass()},
                 {"hbar", cfg.well.hbar()}};
  } else {
    j["well"] = {{"unit_mode", "dimensionless"}};
  }
  if (cfg.x_over_abar) j["x_over_abar"] = *cfg.x_over_abar;
  j["omega_t"] = {{"start", cfg.omega_t.start}, {"stop", cfg.omega_t.stop}, {"steps", cfg.omega_t.steps}};
  j["omega_t_snapshot"] = cfg.omega_t_snapshot;
  if (cfg.k_max) j["envelope"] = {{"k_max", *cfg.k_max}};
  if (cfg.boundary) {
    j["boundary"] = {{"mass_amu", cfg.boundary->mass_amu}, {"omega0", cfg.boundary->omega0}};
  }
  return j;
}

}  // namespace fluctwell::cli
