#pragma once

// Command-line front end: configuration ingestion and command dispatch.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fluctwell/errors.hpp"
#include "fluctwell/noise.hpp"
#include "fluctwell/well.hpp"

namespace fluctwell::cli {

enum class Format { csv, json };

/// Invalid configuration. The message starts with the offending field path.
class ConfigError : public DomainError {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : DomainError(field + ": " + message) {}
};

struct BoundaryOscillator {
  double mass_amu = 30.0;
  double omega0 = 1e15;  // s^-1
};

struct TimeRange {
  double start = 0.0;
  double stop = 300.0;
  int steps = 601;
};

/// Everything a run needs. Unset optionals take per-command defaults; all
/// other defaults reproduce the x/ā = 0.7, σ = 0.01 time series.
struct RunConfig {
  SuperpositionSpec spec;
  NoiseModel noise{0.01};
  QuadratureSpec quad;
  MonteCarloSpec mc;
  WellConfig well = WellConfig::dimensionless();
  std::optional<std::vector<double>> x_over_abar;
  TimeRange omega_t;
  double omega_t_snapshot = 300.0;  // profile time
  std::optional<int> k_max;         // envelope
  std::optional<BoundaryOscillator> boundary;
  std::optional<Format> format;
  std::optional<std::string> output_path;
  int threads = 0;

  /// Cross-field checks shared by every command.
  void validate() const;
};

/// Applies a JSON config document on top of `base`. Throws ConfigError with
/// the field path on malformed or out-of-range values.
RunConfig apply_config_json(const nlohmann::json& doc, RunConfig base = {});

/// Parses "0.1,0.2" style lists.
std::vector<double> parse_number_list(const std::string& text, const std::string& field);

nlohmann::json config_to_json(const RunConfig& cfg);

/// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 1;
inline constexpr int exit_io = 2;
inline constexpr int exit_numerical = 3;

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Process environment.
std::optional<std::string> process_env(const std::string& name);

/// Runs the CLI with argv-style arguments (args[0] is the program name).
/// Output goes to `out` unless --output names a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env = process_env);

}  // namespace fluctwell::cli
