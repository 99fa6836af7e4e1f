#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uwb/config.hpp"
#include "uwb/oracle.hpp"
#include "uwb/report.hpp"
#include "uwb/rng.hpp"
#include "uwb/scenario.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& out_dir,
                const std::vector<std::string>& overrides, int verbosity) {
    uwb::ScenarioConfig cfg;
    try {
        cfg = uwb::load_scenario_config(config_path, overrides);
    } catch (const uwb::Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    uwb::MetricsReport report;
    try {
        report = uwb::run_scenario(cfg);
    } catch (const uwb::Error& e) {
        std::cerr << "run error: " << e.what() << "\n";
        return 2;
    }
    try {
        uwb::write_run_outputs(out_dir, cfg, report);
    } catch (const uwb::Error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    }
    if (verbosity > 0) {
        std::cout << "wrote " << report.rows.size() << " trial rows and "
                  << report.summary.size() << " summary rows to " << out_dir
                  << "\n";
    }
    return 0;
}

int oracle_check_command(int instances, std::uint64_t seed, double tolerance,
                         int verbosity) {
    uwb::SolverConfig solver;
    const uwb::RateModel rm;
    const uwb::BandPlan plan;
    double max_gap = 0.0;
    int infeasible_both = 0;
    int oracle_feasible = 0;
    for (int i = 0; i < instances; ++i) {
        const auto inst = uwb::make_random_instance(uwb::mix_seed(seed, i));
        const uwb::SubbandQualityMatrix e(inst.e);
        const auto oracle =
            uwb::oracle_exhaustive(inst.profiles, e, inst.p_t, {}, rm);
        const auto alloc = uwb::optimal_allocate(inst.profiles, e, inst.p_t, {},
                                                 solver, rm, plan);
        if (!oracle) {
            ++infeasible_both;
            continue;
        }
        ++oracle_feasible;
        double sqos_alloc = 0.0;
        for (std::size_t k = 0; k < inst.profiles.size(); ++k) {
            if (!inst.profiles[k].is_hqos()) {
                sqos_alloc += alloc.achieved_rate_mbps[static_cast<long>(k)];
            }
        }
        const double gap =
            oracle->sqos_sum_rate_mbps > 0.0
                ? (oracle->sqos_sum_rate_mbps - sqos_alloc) /
                      oracle->sqos_sum_rate_mbps
                : 0.0;
        max_gap = std::max(max_gap, gap);
        if (verbosity > 1) {
            std::printf("instance %d: oracle %.4f Mbps, iterative %.4f Mbps, "
                        "gap %.3f%%\n",
                        i, oracle->sqos_sum_rate_mbps, sqos_alloc, 100.0 * gap);
        }
    }
    std::printf("oracle-check: %d instances, %d oracle-feasible, "
                "max SQoS sum-rate gap %.4f%% (tolerance %.2f%%)\n",
                instances, oracle_feasible, 100.0 * max_gap, 100.0 * tolerance);
    return max_gap <= tolerance ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"MB-OFDM UWB sub-band and power allocation simulator"};
    app.require_subcommand(1);

    int verbosity = 1;
    app.add_flag("-v,--verbose", verbosity, "increase verbosity");

    auto* run = app.add_subcommand("run", "run a scenario and write CSV outputs");
    std::string config_path, out_dir = "out";
    std::vector<std::string> overrides;
    std::string seed_override, trials_override, algo_override;
    run->add_option("--config", config_path, "scenario config file")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--seed", seed_override, "override the base seed");
    run->add_option("--trials", trials_override, "override the trial count");
    run->add_option("--algo", algo_override,
                    "optimal | suboptimal | both (overrides the config)");
    run->add_option("--override", overrides,
                    "section.key=value override, repeatable");

    auto* oracle = app.add_subcommand(
        "oracle-check", "compare the iterative allocator with the exhaustive oracle");
    int instances = 200;
    std::uint64_t oc_seed = 1;
    double tolerance = 0.02;
    oracle->add_option("--instances", instances, "number of random instances");
    oracle->add_option("--seed", oc_seed, "base seed");
    oracle->add_option("--tolerance", tolerance, "relative gap tolerance");

    auto* dump = app.add_subcommand("dump-mcs", "print the WiMedia mode table as CSV");

    auto* validate =
        app.add_subcommand("validate-config", "parse and validate a scenario config");
    std::string validate_path;
    validate->add_option("config", validate_path, "scenario config file")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        if (!seed_override.empty()) overrides.push_back("run.seed=" + seed_override);
        if (!trials_override.empty())
            overrides.push_back("run.n_trials=" + trials_override);
        if (!algo_override.empty())
            overrides.push_back("run.algorithms=" + algo_override);
        return run_command(config_path, out_dir, overrides, verbosity);
    }
    if (oracle->parsed()) {
        return oracle_check_command(instances, oc_seed, tolerance, verbosity);
    }
    if (dump->parsed()) {
        std::cout << uwb::mcs_table_csv();
        return 0;
    }
    if (validate->parsed()) {
        try {
            uwb::load_scenario_config(validate_path);
        } catch (const uwb::Error& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 2;
        }
        std::cout << "ok\n";
        return 0;
    }
    return 0;
}
