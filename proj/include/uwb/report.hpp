#ifndef UWB_REPORT_HPP
#define UWB_REPORT_HPP

#include <string>

#include "uwb/config.hpp"
#include "uwb/scenario.hpp"

namespace uwb {

inline constexpr const char* kVersion = "1.0.0";

/// Formats a double with 9 significant digits; throws on non-finite values
/// so no NaN/inf can reach an output file.
std::string format_number(double v);

std::string trials_csv(const MetricsReport& report);
std::string summary_csv(const MetricsReport& report);

/// JSON run manifest: version, seed, config hash, and the full resolved
/// configuration, so a run is reproducible from its outputs alone.
std::string run_manifest(const ScenarioConfig& cfg);

/// Writes trials.csv, summary.csv and manifest.json under out_dir (created
/// if needed). Throws Error on I/O failure.
void write_run_outputs(const std::string& out_dir, const ScenarioConfig& cfg,
                       const MetricsReport& report);

} // namespace uwb

#endif
