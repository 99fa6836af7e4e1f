#include "uwb/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "uwb/rng.hpp"

namespace uwb {

void ScenarioConfig::validate() const {
    if (users.empty()) throw ConfigError("at least one user is required");
    if (n_trials < 1) throw ConfigError("n_trials must be >= 1");
    if (!(p_t_w > 0.0)) throw ConfigError("p_t_w must be > 0");
    if (!run_optimal && !run_suboptimal) {
        throw ConfigError("no algorithm selected");
    }
    channel.validate();
    budget.validate();
    solver.validate();
    std::set<int> ids;
    for (const auto& u : users) {
        mode_for_rate(u.rate_mbps); // throws UnknownModeError on bad rates
        if (!ids.insert(u.id).second) {
            throw ConfigError("duplicate user id " + std::to_string(u.id));
        }
    }
    if (!primaries.empty()) {
        const std::size_t sweep = primaries.front().bandwidths_mhz.size();
        for (const auto& p : primaries) {
            if (p.bandwidths_mhz.empty()) {
                throw ConfigError("primary bandwidth sweep is empty");
            }
            if (p.bandwidths_mhz.size() != sweep && p.bandwidths_mhz.size() != 1) {
                throw ConfigError("primary bandwidth sweeps must have equal length");
            }
            if (std::isnan(p.i_th_w) && std::isnan(p.i_th_fraction)) {
                throw ConfigError("primary needs i_th_mw or i_th_fraction");
            }
        }
    }
}

std::vector<UserProfile> ScenarioConfig::make_profiles() const {
    std::vector<UserProfile> profiles;
    profiles.reserve(users.size());
    for (const auto& u : users) {
        const double pl =
            std::isnan(u.pathloss_db) ? budget.distance_pathloss_db : u.pathloss_db;
        profiles.emplace_back(u.id, u.qos_class, u.rate_mbps, u.delay_ms, pl);
    }
    return profiles;
}

SubbandQualityMatrix build_quality_matrix(
    const std::vector<std::vector<Eigen::ArrayXd>>& sinr_per_user_band,
    const std::vector<double>& lambdas) {
    const auto k_users = static_cast<Eigen::Index>(sinr_per_user_band.size());
    if (k_users == 0 || lambdas.size() != sinr_per_user_band.size()) {
        throw InvalidArgument("build_quality_matrix: size mismatch");
    }
    const auto bands = static_cast<Eigen::Index>(sinr_per_user_band.front().size());
    Eigen::MatrixXd e(k_users, bands);
    for (Eigen::Index k = 0; k < k_users; ++k) {
        for (Eigen::Index b = 0; b < bands; ++b) {
            e(k, b) = effective_sinr(sinr_per_user_band[k][b], lambdas[k]);
        }
    }
    return SubbandQualityMatrix(std::move(e));
}

Eigen::VectorXd power_satisfaction(const AllocationResult& alloc) {
    Eigen::VectorXd s(alloc.power.rows());
    for (Eigen::Index k = 0; k < alloc.power.rows(); ++k) {
        const double p = alloc.power.row(k).sum();
        const double red = alloc.power_red.row(k).sum();
        s[k] = p > 0.0 ? (p - red) / p : 1.0;
    }
    return s;
}

Eigen::VectorXd rate_satisfaction(const AllocationResult& alloc,
                                  const Eigen::VectorXd& baseline_rates_mbps,
                                  const std::vector<UserProfile>& profiles) {
    Eigen::VectorXd s(alloc.achieved_rate_mbps.size());
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        if (profiles[k].is_hqos()) {
            const double target = profiles[k].requested_rate_mbps;
            s[k] = target > 0.0
                       ? std::min(1.0, alloc.achieved_rate_mbps[k] / target)
                       : 1.0;
        } else {
            const double base = baseline_rates_mbps[k];
            s[k] = base > 0.0
                       ? std::clamp(alloc.achieved_rate_mbps[k] / base, 0.0, 1.0)
                       : 1.0;
        }
    }
    return s;
}

double interference_reduction_ratio(const PrimaryLedger& ledger) {
    if (ledger.before <= 0.0) return 0.0;
    return (ledger.before - ledger.after) / ledger.before;
}

namespace {

struct SweepPoint {
    double bandwidth_mhz = 0.0;
    std::vector<PrimaryEnvironment> envs;
};

/// Resolves the per-primary thresholds and the per-sweep-point environments.
std::vector<SweepPoint> build_sweep(const ScenarioConfig& cfg) {
    std::vector<SweepPoint> sweep;
    if (cfg.primaries.empty()) return sweep;
    const std::size_t n = cfg.primaries.front().bandwidths_mhz.size();
    sweep.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        sweep[i].bandwidth_mhz = cfg.primaries.front().bandwidths_mhz[i];
    }
    for (const auto& spec : cfg.primaries) {
        std::vector<PrimaryEnvironment> envs;
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double bw = spec.bandwidths_mhz.size() == 1
                                  ? spec.bandwidths_mhz[0]
                                  : spec.bandwidths_mhz[i];
            auto env = make_primary_environment(spec.center_ghz, bw, cfg.plan, 0.0);
            worst = std::max(worst, cfg.p_t_w / cfg.plan.bands() *
                                        env.factors.per_band[env.band.overlapped_band]);
            envs.push_back(std::move(env));
        }
        const double i_th = !std::isnan(spec.i_th_w)
                                ? spec.i_th_w
                                : spec.i_th_fraction * worst;
        for (std::size_t i = 0; i < n; ++i) {
            envs[i].band.i_th = i_th;
            sweep[i].envs.push_back(std::move(envs[i]));
        }
    }
    return sweep;
}

AllocationResult run_algorithm(const std::string& name,
                               const std::vector<UserProfile>& profiles,
                               const SubbandQualityMatrix& e,
                               const ScenarioConfig& cfg,
                               const std::vector<PrimaryEnvironment>& envs,
                               const RateModel& rm) {
    if (name == "optimal") {
        return optimal_allocate(profiles, e, cfg.p_t_w, envs, cfg.solver, rm,
                                cfg.plan);
    }
    return suboptimal_allocate(profiles, e, cfg.p_t_w, envs, cfg.solver, rm,
                               cfg.plan);
}

} // namespace

MetricsReport run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    const auto profiles = cfg.make_profiles();
    const auto k_users = static_cast<int>(profiles.size());
    const int bands = cfg.plan.bands();
    const RateModel rm{cfg.plan.data_bandwidth_mhz()};

    std::vector<double> lambdas;
    for (const auto& p : profiles) {
        lambdas.push_back(mode_for_rate(p.requested_rate_mbps).lambda);
    }

    const auto sweep = build_sweep(cfg);

    std::vector<std::string> algos;
    if (cfg.run_optimal) algos.push_back("optimal");
    if (cfg.run_suboptimal) algos.push_back("suboptimal");

    MetricsReport report;
    for (int trial = 0; trial < cfg.n_trials; ++trial) {
        // Per-user channels and clean per-subcarrier unit-power SINRs.
        std::vector<std::vector<Eigen::VectorXcd>> gains(k_users);
        std::vector<std::vector<Eigen::ArrayXd>> sinr_clean(k_users);
        for (int k = 0; k < k_users; ++k) {
            const auto ch = generate_channel(
                cfg.channel,
                mix_seed(cfg.seed, static_cast<std::uint64_t>(trial),
                         static_cast<std::uint64_t>(profiles[k].id)));
            LinkBudget budget = cfg.budget;
            budget.distance_pathloss_db = profiles[k].pathloss_db;
            budget.primary_interference_enabled = false;
            gains[k].resize(bands);
            sinr_clean[k].resize(bands);
            for (int b = 0; b < bands; ++b) {
                gains[k][b] = frequency_response(ch, cfg.plan.centers_ghz[b],
                                                 cfg.plan.n_subcarriers,
                                                 cfg.plan.spacing_mhz);
                sinr_clean[k][b] =
                    per_subcarrier_sinr(gains[k][b], budget, {},
                                        cfg.plan.spacing_mhz);
            }
        }
        const auto e_clean = build_quality_matrix(sinr_clean, lambdas);

        for (const auto& algo : algos) {
            const AllocationResult baseline =
                run_algorithm(algo, profiles, e_clean, cfg, {}, rm);
            const Eigen::VectorXd baseline_rates = baseline.achieved_rate_mbps;

            for (const auto& point : sweep) {
                // Primary-user emission degrades the overlapped subcarriers.
                SubbandQualityMatrix e_used = e_clean;
                if (cfg.budget.primary_interference_enabled) {
                    auto sinr = sinr_clean;
                    for (const auto& env : point.envs) {
                        if (env.band.overlapped_count() == 0) continue;
                        std::set<int> overlapped;
                        for (int i = env.band.n_ud; i <= env.band.n_up; ++i) {
                            overlapped.insert(i);
                        }
                        const int ob = env.band.overlapped_band;
                        for (int k = 0; k < k_users; ++k) {
                            LinkBudget budget = cfg.budget;
                            budget.distance_pathloss_db = profiles[k].pathloss_db;
                            sinr[k][ob] = per_subcarrier_sinr(
                                gains[k][ob], budget, overlapped,
                                cfg.plan.spacing_mhz);
                        }
                    }
                    e_used = build_quality_matrix(sinr, lambdas);
                }

                const AllocationResult alloc =
                    run_algorithm(algo, profiles, e_used, cfg, point.envs, rm);
                const Eigen::VectorXd rate_sat =
                    rate_satisfaction(alloc, baseline_rates, profiles);
                const Eigen::VectorXd power_sat = power_satisfaction(alloc);

                for (int k = 0; k < k_users; ++k) {
                    TrialRow row;
                    row.algorithm = algo;
                    row.trial = trial;
                    row.bandwidth_mhz = point.bandwidth_mhz;
                    row.user_id = profiles[k].id;
                    row.qos_class = profiles[k].qos_class;
                    row.rate_target_mbps = profiles[k].requested_rate_mbps;
                    row.rate_achieved_mbps = alloc.achieved_rate_mbps[k];
                    row.rate_satisfaction = rate_sat[k];
                    row.power_alloc_w = alloc.power.row(k).sum();
                    row.power_red_w = alloc.power_red.row(k).sum();
                    row.power_satisfaction = power_sat[k];
                    for (const auto& led : alloc.ledger) {
                        row.i_before_w += led.before_user[k];
                        row.i_after_w += led.after_user[k];
                    }
                    row.i_reduction_ratio =
                        row.i_before_w > 0.0
                            ? (row.i_before_w - row.i_after_w) / row.i_before_w
                            : 0.0;
                    row.interferer = alloc.interferer[k];
                    row.flags = alloc.flags.to_string();
                    report.rows.push_back(std::move(row));
                }
            }
        }
    }
    summarize(report, cfg);
    return report;
}

void summarize(MetricsReport& report, const ScenarioConfig& cfg) {
    (void)cfg;
    struct Acc {
        double rate_sum = 0.0, rate_sq = 0.0;
        double power_sum = 0.0, power_sq = 0.0;
        double rate_sum_all = 0.0, power_sum_all = 0.0;
        double i_before = 0.0, i_after = 0.0;
        long n_int = 0, n = 0;
        long still_over = 0, infeasible = 0, max_iters = 0;
    };
    std::map<std::tuple<std::string, double, int>, Acc> groups;
    for (const auto& r : report.rows) {
        auto& a = groups[{r.algorithm, r.bandwidth_mhz,
                          r.qos_class == QosClass::HQoS ? 0 : 1}];
        a.n += 1;
        a.rate_sum_all += r.rate_satisfaction;
        a.power_sum_all += r.power_satisfaction;
        a.i_before += r.i_before_w;
        a.i_after += r.i_after_w;
        if (r.interferer) {
            a.n_int += 1;
            a.rate_sum += r.rate_satisfaction;
            a.rate_sq += r.rate_satisfaction * r.rate_satisfaction;
            a.power_sum += r.power_satisfaction;
            a.power_sq += r.power_satisfaction * r.power_satisfaction;
        }
        if (r.flags.find("STILL_OVER") != std::string::npos) a.still_over += 1;
        if (r.flags.find("INFEASIBLE") != std::string::npos) a.infeasible += 1;
        if (r.flags.find("MAX_ITERS") != std::string::npos) a.max_iters += 1;
    }
    report.summary.clear();
    for (const auto& [key, a] : groups) {
        SummaryRow s;
        s.algorithm = std::get<0>(key);
        s.bandwidth_mhz = std::get<1>(key);
        s.qos_class = std::get<2>(key) == 0 ? QosClass::HQoS : QosClass::SQoS;
        s.n_rows = a.n;
        s.n_interferer_rows = a.n_int;
        if (a.n_int > 0) {
            s.mean_rate_satisfaction = a.rate_sum / a.n_int;
            s.mean_power_satisfaction = a.power_sum / a.n_int;
            s.std_rate_satisfaction =
                std::sqrt(std::max(0.0, a.rate_sq / a.n_int -
                                            s.mean_rate_satisfaction *
                                                s.mean_rate_satisfaction));
            s.std_power_satisfaction =
                std::sqrt(std::max(0.0, a.power_sq / a.n_int -
                                            s.mean_power_satisfaction *
                                                s.mean_power_satisfaction));
        }
        if (a.n > 0) {
            s.mean_rate_satisfaction_all = a.rate_sum_all / a.n;
            s.mean_power_satisfaction_all = a.power_sum_all / a.n;
        }
        s.class_i_reduction_ratio =
            a.i_before > 0.0 ? (a.i_before - a.i_after) / a.i_before : 0.0;
        s.n_still_over = a.still_over;
        s.n_infeasible = a.infeasible;
        s.n_max_iters = a.max_iters;
        report.summary.push_back(std::move(s));
    }
}

} // namespace uwb
