#ifndef UWB_CONFIG_HPP
#define UWB_CONFIG_HPP

#include <string>
#include <vector>

#include "uwb/scenario.hpp"

namespace uwb {

/// Raw key/value view of a scenario file: `[section]` headers followed by
/// `key = value` lines, `#` comments. `[users]` and `[primary]` may repeat,
/// one block per user / primary.
struct RawSection {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
};

struct RawConfig {
    std::vector<RawSection> sections;

    /// Applies a dotted override such as `run.n_trials=1`,
    /// `solver.delta=0.1`, or `users.0.rate_mbps=160` (index selects the
    /// n-th block of a repeatable section; bare `users.key` means block 0).
    void apply_override(const std::string& spec);
};

RawConfig parse_raw_config(const std::string& text);
RawConfig load_raw_config(const std::string& path);

/// Typed validation of the raw form. Unknown sections or keys are errors.
ScenarioConfig build_scenario_config(const RawConfig& raw);

ScenarioConfig load_scenario_config(const std::string& path,
                                    const std::vector<std::string>& overrides = {});

/// Canonical re-serialization of the resolved configuration (drives the run
/// manifest and the config hash).
std::string dump_scenario_config(const ScenarioConfig& cfg);

/// FNV-1a 64 over the canonical dump.
std::uint64_t config_hash(const ScenarioConfig& cfg);

} // namespace uwb

#endif
