#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "fluctwell/analysis.hpp"
#include "fluctwell/kernels.hpp"

namespace fluctwell::cli {

inline constexpr int schema_version = 1;

inline constexpr const char* time_series_header =
    "omega_t,exact,approx,mc_mean,mc_stderr,interference_exact,envelope_predicted";

/// 17 significant digits.
std::string format_double(double v);

/// LF-terminated CSV with the time-series header; `with_x` prepends an
/// x_over_abar column. Densities are scaled to units of 1/ā.
void write_density_csv(std::ostream& out, std::span<const DensityRecord> records, double a_bar,
                       bool with_x);

nlohmann::json density_records_json(std::span<const DensityRecord> records, double a_bar);

nlohmann::json envelope_json(std::span<const EnvelopeSample> samples, const FitResult& fit,
                             const DecayParameters& decay, double omega_bar);

nlohmann::json deviation_report_json(const DeviationReport& report, double a_bar);

}  // namespace fluctwell::cli
