#pragma once

#include "spinlab/config.hpp"
#include "spinlab/zonal.hpp"

#include <string>
#include <vector>

namespace spinlab {

struct ReportBundle {
  std::string summary_json;
  std::string profile_csv;  // empty when the command produces no profile
  std::string scan_csv;     // scan command only
};

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

/// Rows of (t, value, smoothed value per r). Values come from direct samples
/// when the profile carries them, otherwise from the Legendre sum.
std::string profile_csv(const ZonalProfile& profile, const std::vector<double>& r_ladder);
void emit_profile_csv(const ZonalProfile& profile, const std::vector<double>& r_ladder, const std::string& path);

/// Runs the configured command. Throws on invalid input; a non-zonoid verdict
/// is a result, not an error.
ReportBundle run(const ExperimentConfig& config);

/// Writes <prefix>.json and the non-empty CSV tables.
void write_bundle(const ReportBundle& bundle, const std::string& prefix);

}  // namespace spinlab
