#ifndef UWB_SCENARIO_HPP
#define UWB_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "uwb/allocator.hpp"
#include "uwb/channel.hpp"
#include "uwb/oracle.hpp"

namespace uwb {

struct UserSpec {
    int id = 0;
    QosClass qos_class = QosClass::SQoS;
    double rate_mbps = 53.3;
    double delay_ms = 100.0;
    double pathloss_db = std::numeric_limits<double>::quiet_NaN(); // NaN: default
};

struct PrimarySpec {
    double center_ghz = 3.432;
    std::vector<double> bandwidths_mhz{1, 5, 10, 20, 30, 40, 50};
    double i_th_w = std::numeric_limits<double>::quiet_NaN();
    double i_th_fraction = std::numeric_limits<double>::quiet_NaN();
};

struct ScenarioConfig {
    std::vector<UserSpec> users;
    std::vector<PrimarySpec> primaries;
    CmProfile channel;
    LinkBudget budget;
    double p_t_w = 1.2e-4;
    int n_trials = 1;
    std::uint64_t seed = 1;
    SolverConfig solver;
    bool run_optimal = true;
    bool run_suboptimal = true;
    BandPlan plan;

    void validate() const;
    std::vector<UserProfile> make_profiles() const;
};

/// One CSV row: a (algorithm, trial, bandwidth, user) cell.
struct TrialRow {
    std::string algorithm;
    int trial = 0;
    double bandwidth_mhz = 0.0;
    int user_id = 0;
    QosClass qos_class = QosClass::SQoS;
    double rate_target_mbps = 0.0;
    double rate_achieved_mbps = 0.0;
    double rate_satisfaction = 1.0;
    double power_alloc_w = 0.0;
    double power_red_w = 0.0;
    double power_satisfaction = 1.0;
    double i_before_w = 0.0;
    double i_after_w = 0.0;
    double i_reduction_ratio = 0.0;
    bool interferer = false;
    std::string flags;
};

/// Aggregates per (algorithm, bandwidth, class). The headline satisfaction
/// means are taken over the users causing interference at that sweep point
/// (the population the satisfaction question is about); unconditional means
/// over all rows are reported alongside.
struct SummaryRow {
    std::string algorithm;
    double bandwidth_mhz = 0.0;
    QosClass qos_class = QosClass::SQoS;
    double mean_rate_satisfaction = 1.0;
    double std_rate_satisfaction = 0.0;
    double mean_power_satisfaction = 1.0;
    double std_power_satisfaction = 0.0;
    double mean_rate_satisfaction_all = 1.0;
    double mean_power_satisfaction_all = 1.0;
    double class_i_reduction_ratio = 0.0; // (class before - after) / class before
    long n_interferer_rows = 0;
    long n_rows = 0;
    long n_still_over = 0;
    long n_infeasible = 0;
    long n_max_iters = 0;
};

struct MetricsReport {
    std::vector<TrialRow> rows;
    std::vector<SummaryRow> summary;
};

/// E_{k,b} = EESM of user k's per-unit-power subcarrier SINRs on band b,
/// using the lambda of user k's requested mode.
SubbandQualityMatrix build_quality_matrix(
    const std::vector<std::vector<Eigen::ArrayXd>>& sinr_per_user_band,
    const std::vector<double>& lambdas);

/// Per-user ratio of kept power: (sum P - sum P_red) / sum P; 1 when nothing
/// was allocated or nothing reduced.
Eigen::VectorXd power_satisfaction(const AllocationResult& alloc);

/// Hard-QoS users: min(1, achieved / target). Soft-QoS users: achieved
/// relative to the same-channel no-primary baseline, clamped to [0, 1].
Eigen::VectorXd rate_satisfaction(const AllocationResult& alloc,
                                  const Eigen::VectorXd& baseline_rates_mbps,
                                  const std::vector<UserProfile>& profiles);

/// (before - after) / before for one primary's ledger; 0 when before == 0.
double interference_reduction_ratio(const PrimaryLedger& ledger);

/// Monte Carlo driver: per trial draws one channel per user, builds the
/// quality matrix, runs the requested algorithms across the bandwidth sweep
/// against the no-primary baseline, and aggregates. Deterministic per seed.
MetricsReport run_scenario(const ScenarioConfig& cfg);

/// Recomputes the summary block from the rows (used after merging reports).
void summarize(MetricsReport& report, const ScenarioConfig& cfg);

} // namespace uwb

#endif
