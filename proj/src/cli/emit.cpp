#include "fluctwell/emit.hpp"

#include <fmt/format.h>

#include <cmath>
#include <ostream>

namespace fluctwell::cli {

using nlohmann::json;

namespace {

// JSON has no infinities; emit null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json record_json(const DensityRecord& r, double a_bar) {
  return json{{"x_over_abar", r.x / a_bar},
              {"omega_t", r.omega_t},
              {"exact", r.exact * a_bar},
              {"approx", r.approx * a_bar},
              {"mc_mean", r.mc_mean * a_bar},
              {"mc_stderr", r.mc_stderr * a_bar},
              {"interference_exact", r.interference_exact * a_bar},
              {"envelope_predicted", r.envelope_predicted * a_bar}};
}

}  // namespace

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

void write_density_csv(std::ostream& out, std::span<const DensityRecord> records, double a_bar,
                       bool with_x) {
  std::string buf;
  if (with_x) buf += "x_over_abar,";
  buf += time_series_header;
  buf += '\n';
  for (const DensityRecord& r : records) {
    if (with_x) {
      buf += format_double(r.x / a_bar);
      buf += ',';
    }
    fmt::format_to(std::back_inserter(buf), "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                   r.omega_t, r.exact * a_bar, r.approx * a_bar, r.mc_mean * a_bar,
                   r.mc_stderr * a_bar, r.interference_exact * a_bar,
                   r.envelope_predicted * a_bar);
  }
  out << buf;
}

json density_records_json(std::span<const DensityRecord> records, double a_bar) {
  json arr = json::array();
  for (const DensityRecord& r : records) arr.push_back(record_json(r, a_bar));
  return arr;
}

json envelope_json(std::span<const EnvelopeSample> samples, const FitResult& fit,
                   const DecayParameters& decay, double omega_bar) {
  json s = json::array();
  for (const EnvelopeSample& e : samples) {
    s.push_back({{"k", e.k}, {"omega_t", e.t * omega_bar}, {"t", e.t}, {"magnitude", e.magnitude}});
  }
  return json{{"samples", s},
              {"fit",
               {{"gamma_fit", fit.gamma_fit},
                {"amplitude_fit", fit.amplitude_fit},
                {"residual_rms", fit.residual_rms},
                {"samples_used", fit.samples_used}}},
              {"gamma_predicted", number(decay.gamma)},
              {"ratio", number(fit.gamma_fit / decay.gamma)},
              {"omega_bar", number(decay.omega_bar)},
              {"t_onset", number(decay.t_onset)},
              {"t_decay", number(decay.t_decay)}};
}

json deviation_report_json(const DeviationReport& report, double a_bar) {
  json records = json::array();
  for (const ComparisonRecord& c : report.records) {
    json r = record_json(c.density, a_bar);
    r["fixed"] = c.fixed * a_bar;
    r["z_score"] = number(c.z_score);
    r["regime"] = {{"sigma", c.regime.sigma},
                   {"omega_t", c.regime.omega_t},
                   {"late_time", c.regime.late_time},
                   {"neglected_phase", c.regime.neglected_phase},
                   {"higher_order_negligible", c.regime.higher_order_negligible}};
    records.push_back(std::move(r));
  }
  return json{{"records", records},
              {"summary",
               {{"max_abs_exact_minus_approx", report.max_abs_exact_minus_approx * a_bar},
                {"rms_exact_minus_approx", report.rms_exact_minus_approx * a_bar},
                {"max_abs_z", number(report.max_abs_z)},
                {"max_abs_exact_minus_fixed", report.max_abs_exact_minus_fixed * a_bar},
                {"approx_tolerance", report.approx_tolerance},
                {"approx_within_tolerance",
                 report.max_abs_exact_minus_approx * a_bar <= report.approx_tolerance}}}};
}

}  // namespace fluctwell::cli
