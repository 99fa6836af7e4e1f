// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Expects the shipped scenario configs directory as argv[1].

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "uwb/config.hpp"
#include "uwb/oracle.hpp"
#include "uwb/report.hpp"
#include "uwb/rng.hpp"
#include "uwb/scenario.hpp"

using namespace uwb;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

const BandPlan kPlan;
const RateModel kRm{kPlan.data_bandwidth_mhz()};

// ---------------------------------------------------------------- criterion 1
void criterion_1_eesm_properties() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 gen(101);
    std::uniform_real_distribution<double> val(0.0, 50.0);
    std::uniform_real_distribution<double> lam(0.5, 3.0);
    bool ok = true;
    std::string why;
    for (int it = 0; it < 2000 && ok; ++it) {
        const int n = 1 + static_cast<int>(gen() % 48);
        Eigen::ArrayXd v(n);
        for (int i = 0; i < n; ++i) v[i] = val(gen);
        const double lambda = lam(gen);
        const double eff = effective_sinr(v, lambda);
        if (eff < v.minCoeff() - 1e-12 || eff > v.maxCoeff() + 1e-12) {
            ok = false;
            why = "bounds violated";
        }
        Eigen::ArrayXd up = v;
        up[gen() % n] += 1.0 + val(gen);
        if (effective_sinr(up, lambda) < eff - 1e-12) {
            ok = false;
            why = "monotonicity violated";
        }
        Eigen::ArrayXd perm = v.reverse();
        if (std::abs(effective_sinr(perm, lambda) - eff) >
            1e-12 * std::max(1.0, std::abs(eff))) {
            ok = false;
            why = "permutation invariance violated";
        }
        Eigen::ArrayXd cst = Eigen::ArrayXd::Constant(n, v[0]);
        if (std::abs(effective_sinr(cst, lambda) - v[0]) >
            1e-12 * std::max(1.0, v[0])) {
            ok = false;
            why = "constant fixed point violated";
        }
        // Mean limit at lambda = 1e6: the finite-lambda bias is var/(2 lambda),
        // bounded by max/( 2 lambda) relative once values sit in [0, 1].
        Eigen::ArrayXd small = v * (1.0 / 50.0);
        if (const double mean = small.mean(); mean > 0.0) {
            const double limit = effective_sinr(small, 1e6);
            if (std::abs(limit - mean) / mean > 1e-6) {
                ok = false;
                why = "lambda->inf mean limit violated";
            }
        }
    }
    const double dt = elapsed_s(t0);
    std::ostringstream os;
    os << "EESM properties on 2000 random vectors"
       << (ok ? "" : " (" + why + ")") << ", " << dt << " s";
    report(1, ok && dt < 1.0, os.str());
}

// ---------------------------------------------------------------- criterion 2
void criterion_2_quadrature() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 gen(202);
    std::uniform_real_distribution<double> dist(-120.0, 120.0);
    std::uniform_real_distribution<double> width(0.5, 50.0);
    const double ts = kPlan.symbol_duration_us();
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double d = dist(gen);
        const double w = width(gen);
        const double mine = overlap_factor_at_distance(d, w, ts);
        const double ref = oracles::riemann_overlap(d, w, ts);
        const double rel = std::abs(mine - ref) / std::max(ref, 1e-12);
        worst = std::max(worst, rel);
        if (rel > 1e-6) ok = false;
    }
    double prev = -1.0;
    for (double bw = 1.0; bw <= 50.0; bw += 1.0) {
        const auto p = make_primary(3.434, bw, kPlan, 1.0);
        const double f = band_interference_factor(0, p, kPlan);
        if (f < prev - 1e-12) ok = false;
        prev = f;
    }
    const double dt = elapsed_s(t0);
    std::ostringstream os;
    os << "quadrature vs 1e5-point Riemann oracle, worst rel err " << worst
       << "; I_b monotone in width; " << dt << " s";
    report(2, ok && dt < 10.0, os.str());
}

// ---------------------------------------------------------------- criterion 3
void criterion_3_suboptimal_assignment() {
    std::mt19937_64 gen(303);
    std::uniform_real_distribution<double> unif(0.1, 10.0);
    SolverConfig cfg;
    bool ok = true;
    for (int it = 0; it < 1000 && ok; ++it) {
        auto inst = make_random_instance(gen());
        // Inject exact ties in one band every few instances.
        if (it % 5 == 0) {
            inst.e(0, 1) = inst.e(1, 1) * inst.profiles[1].w_k / inst.profiles[0].w_k;
        }
        if (it % 7 == 0) {
            inst.e.col(2).setConstant(unif(gen));
        }
        const auto alloc = suboptimal_allocate(
            inst.profiles, SubbandQualityMatrix(inst.e), inst.p_t, {}, cfg, kRm,
            kPlan);
        for (int b = 0; b < 3 && ok; ++b) {
            // Brute force with the documented tie order: priority, then id.
            const auto order = priority_order(inst.profiles);
            int winner = -1;
            double best = -1.0;
            for (int idx : order) {
                const double v = inst.profiles[idx].w_k * inst.e(idx, b);
                if (v > best) {
                    best = v;
                    winner = idx;
                }
            }
            if (alloc.rho(winner, b) != 1) ok = false;
        }
    }
    report(3, ok, "suboptimal argmax equals per-band brute force on 1000 "
                  "random 3x3 instances (with exact ties)");
}

// ------------------------------------------------------------ criteria 4 & 5
void criteria_4_5_optimal_vs_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    SolverConfig cfg;
    bool ok4 = true, ok5 = true;
    double worst_gap = 0.0, worst_kkt = 0.0, worst_power = 0.0;
    int feasible = 0;
    std::string why4;
    for (int i = 0; i < 200; ++i) {
        const auto inst = make_random_instance(mix_seed(404, i));
        const SubbandQualityMatrix q(inst.e);
        const auto alloc =
            optimal_allocate(inst.profiles, q, inst.p_t, {}, cfg, kRm, kPlan);
        const double p_err = std::abs(alloc.power.sum() - inst.p_t) / inst.p_t;
        worst_power = std::max(worst_power, p_err);
        if (p_err > 1e-4) {
            ok4 = false;
            why4 = "power budget missed";
        }
        const auto oracle = oracle_exhaustive(inst.profiles, q, inst.p_t, {}, kRm);
        if (oracle) {
            ++feasible;
            if (alloc.achieved_rate_mbps[0] <
                inst.profiles[0].requested_rate_mbps * (1.0 - 1e-9)) {
                ok4 = false;
                why4 = "HQoS target missed on an oracle-feasible instance";
            }
            const double sqos =
                alloc.achieved_rate_mbps[1] + alloc.achieved_rate_mbps[2];
            const double gap =
                (oracle->sqos_sum_rate_mbps - sqos) /
                std::max(oracle->sqos_sum_rate_mbps, 1e-9);
            worst_gap = std::max(worst_gap, gap);
            if (gap > 0.02) {
                ok4 = false;
                why4 = "SQoS sum rate more than 2% below the oracle";
            }
        }
        // Criterion 5: stationarity of every assigned positive power.
        for (int k = 0; k < 3; ++k) {
            for (int b = 0; b < 3; ++b) {
                if (alloc.rho(k, b) && alloc.power(k, b) > 0.0) {
                    const double expect =
                        alloc.state.alpha[k] * alloc.state.mu - 1.0 / q(k, b);
                    const double rel = std::abs(alloc.power(k, b) - expect) /
                                       std::max(std::abs(expect), 1e-300);
                    worst_kkt = std::max(worst_kkt, rel);
                    if (rel > 1e-6) ok5 = false;
                }
            }
        }
    }
    const double dt = elapsed_s(t0);
    {
        std::ostringstream os;
        os << "optimal vs oracle on 200 instances (" << feasible
           << " oracle-feasible): worst SQoS gap " << 100.0 * worst_gap
           << "%, worst power error " << worst_power << ", " << dt << " s"
           << (why4.empty() ? "" : " (" + why4 + ")");
        report(4, ok4 && dt < 120.0, os.str());
    }
    {
        std::ostringstream os;
        os << "KKT stationarity: worst relative deviation " << worst_kkt;
        report(5, ok5, os.str());
    }
}

// ---------------------------------------------------------------- criterion 6
void criterion_6_interference_control() {
    std::mt19937_64 gen(606);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    SolverConfig cfg;
    cfg.assignment_mode = AssignmentMode::OneBandPerUser;
    bool ok = true;
    std::string why;
    int over = 0, under = 0, satisfiable_checked = 0;
    for (int t = 0; t < 500 && ok; ++t) {
        const auto inst = make_random_instance(mix_seed(607, t));
        const SubbandQualityMatrix q(inst.e);
        const double bw = 1.0 + 49.0 * unif(gen);
        auto env = make_primary_environment(3.432, bw, kPlan, 0.0);
        const double worst_i =
            inst.p_t / 3.0 * env.factors.per_band[env.band.overlapped_band];
        env.band.i_th = worst_i * (0.05 + 0.9 * unif(gen));
        const auto alloc =
            (t % 2 == 0)
                ? suboptimal_allocate(inst.profiles, q, inst.p_t, {env}, cfg,
                                      kRm, kPlan)
                : optimal_allocate(inst.profiles, q, inst.p_t, {env}, cfg, kRm,
                                   kPlan);
        const auto& led = alloc.ledger.at(0);
        const double m = env.band.overlapped_count();
        const int ob = env.band.overlapped_band;
        if (led.after <= env.band.i_th * (1.0 + 1e-9)) {
            ++under;
        } else {
            ++over;
            // Every SQoS interferer annulled, every HQoS interferer at the cap.
            for (int k = 0; k < 3 && ok; ++k) {
                if (!alloc.rho(k, ob)) continue;
                const double ov_gross =
                    alloc.power(k, ob) * m / kPlan.n_subcarriers;
                if (!inst.profiles[k].is_hqos()) {
                    if (std::abs(alloc.power_red(k, ob) - ov_gross) > 1e-15) {
                        ok = false;
                        why = "SQoS overlapped power not exactly annulled";
                    }
                } else {
                    std::vector<double> powers, qualities;
                    std::size_t ovpos = 0;
                    for (int b = 0; b < 3; ++b) {
                        if (!alloc.rho(k, b)) continue;
                        if (b == ob) ovpos = powers.size();
                        powers.push_back(alloc.power(k, b));
                        qualities.push_back(q(k, b));
                    }
                    const double cap_ref = oracles::max_reduction_for_target(
                        powers, qualities, ovpos, m, kPlan.n_subcarriers,
                        kRm.to_spectral(inst.profiles[k].requested_rate_mbps));
                    const double expect = std::min(cap_ref, ov_gross);
                    if (std::abs(alloc.power_red(k, ob) - expect) >
                        1e-6 * std::max(expect, 1e-12)) {
                        ok = false;
                        why = "HQoS reduction differs from the bisection oracle";
                    }
                }
            }
        }
        for (int k = 0; k < 3 && ok; ++k) {
            if (inst.profiles[k].is_hqos() && alloc.hqos_satisfiable[k]) {
                ++satisfiable_checked;
                if (alloc.achieved_rate_mbps[k] <
                    inst.profiles[k].requested_rate_mbps * (1.0 - 1e-9)) {
                    ok = false;
                    why = "satisfiable HQoS user fell below target";
                }
            }
        }
    }
    std::ostringstream os;
    os << "interference control on 500 trials: " << under
       << " under threshold, " << over << " capped (ledger verified), "
       << satisfiable_checked << " satisfiable-HQoS rate checks"
       << (why.empty() ? "" : " (" + why + ")");
    report(6, ok && over > 20 && under > 20, os.str());
}

// ------------------------------------------------------- scenario-level runs
struct SummaryTable {
    // (algorithm, bandwidth, class) -> SummaryRow
    std::map<std::string, std::map<double, std::map<int, SummaryRow>>> cells;
    std::vector<double> bandwidths;

    static SummaryTable from(const MetricsReport& report) {
        SummaryTable t;
        for (const auto& s : report.summary) {
            const int c = s.qos_class == QosClass::HQoS ? 0 : 1;
            t.cells[s.algorithm][s.bandwidth_mhz][c] = s;
            if (t.cells.size() == 1 && c == 0) {
                t.bandwidths.push_back(s.bandwidth_mhz);
            }
        }
        std::sort(t.bandwidths.begin(), t.bandwidths.end());
        t.bandwidths.erase(std::unique(t.bandwidths.begin(), t.bandwidths.end()),
                           t.bandwidths.end());
        return t;
    }

    const SummaryRow& at(const std::string& algo, double bw, int cls) const {
        return cells.at(algo).at(bw).at(cls);
    }
};

/// At most one inversion, none larger than 1 percentage point.
bool non_increasing(const std::vector<double>& v, double tol_pp = 0.01) {
    int inversions = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] > v[i - 1] + 1e-9) {
            if (v[i] - v[i - 1] > tol_pp) return false;
            if (++inversions > 1) return false;
        }
    }
    return true;
}

void criteria_7_8_figure_trends(const std::string& configs_dir,
                                const SummaryTable& sc1,
                                const SummaryTable& sc2, double seconds) {
    (void)configs_dir;
    bool ok7 = true;
    std::string why7;
    // (a) HQoS power satisfaction non-increasing in bandwidth.
    for (const auto& algo : {"optimal", "suboptimal"}) {
        for (const auto* t : {&sc1, &sc2}) {
            std::vector<double> ps;
            for (double bw : t->bandwidths) {
                ps.push_back(t->at(algo, bw, 0).mean_power_satisfaction);
            }
            if (!non_increasing(ps)) {
                ok7 = false;
                why7 = std::string("power satisfaction not non-increasing (") +
                       algo + ")";
            }
        }
    }
    // (b) higher requested rate is better protected, at every sweep point.
    for (const auto& algo : {"optimal", "suboptimal"}) {
        for (double bw : sc1.bandwidths) {
            const double a = sc1.at(algo, bw, 0).mean_power_satisfaction;
            const double b = sc2.at(algo, bw, 0).mean_power_satisfaction;
            if (a < b - 1e-9) {
                ok7 = false;
                why7 = "scenario-1 less protected than scenario-2 at " +
                       std::to_string(bw) + " MHz (" + algo + ")";
            }
        }
    }
    // (c) sweep-averaged optimal-minus-suboptimal gap within [3, 20] points.
    double gap1 = 0.0, gap2 = 0.0;
    for (double bw : sc1.bandwidths) {
        gap1 += sc1.at("optimal", bw, 0).mean_power_satisfaction -
                sc1.at("suboptimal", bw, 0).mean_power_satisfaction;
        gap2 += sc2.at("optimal", bw, 0).mean_power_satisfaction -
                sc2.at("suboptimal", bw, 0).mean_power_satisfaction;
    }
    gap1 /= static_cast<double>(sc1.bandwidths.size());
    gap2 /= static_cast<double>(sc2.bandwidths.size());
    if (!(gap1 >= 0.03 && gap1 <= 0.20)) {
        ok7 = false;
        why7 = "scenario-1 optimal/suboptimal gap " +
               std::to_string(100.0 * gap1) + "pp outside [3, 20]";
    }
    if (!(gap2 >= 0.03 && gap2 <= 0.20)) {
        ok7 = false;
        why7 = "scenario-2 optimal/suboptimal gap " +
               std::to_string(100.0 * gap2) + "pp outside [3, 20]";
    }
    {
        std::ostringstream os;
        os << "power-satisfaction trends (2 scenarios x 500 trials): "
              "monotone, 320 Mbps >= 160 Mbps at every point, "
              "optimal-suboptimal gaps "
           << 100.0 * gap1 << "pp / " << 100.0 * gap2 << "pp, " << seconds
           << " s" << (why7.empty() ? "" : " (" + why7 + ")");
        report(7, ok7 && seconds < 300.0, os.str());
    }

    bool ok8 = true;
    std::string why8;
    const double last = sc1.bandwidths.back();
    for (const auto& algo : {"optimal", "suboptimal"}) {
        const double h50 = sc1.at(algo, last, 0).mean_rate_satisfaction;
        if (!(h50 >= 0.65 && h50 <= 0.95)) {
            ok8 = false;
            why8 = std::string("HQoS rate satisfaction at 50 MHz (") + algo +
                   ") = " + std::to_string(h50) + " outside [0.65, 0.95]";
        }
    }
    const double s50 = sc1.at("suboptimal", last, 1).mean_rate_satisfaction;
    if (!(s50 >= 0.25 && s50 <= 0.55)) {
        ok8 = false;
        why8 = "SQoS suboptimal rate satisfaction at 50 MHz = " +
               std::to_string(s50) + " outside [0.25, 0.55]";
    }
    for (const auto& algo : {"optimal", "suboptimal"}) {
        for (double bw : sc1.bandwidths) {
            const double h = sc1.at(algo, bw, 0).mean_rate_satisfaction;
            const double s = sc1.at(algo, bw, 1).mean_rate_satisfaction;
            if (h < s - 1e-9) {
                ok8 = false;
                why8 = "HQoS below SQoS at " + std::to_string(bw) + " MHz (" +
                       algo + ")";
            }
        }
    }
    double max_gap = 0.0;
    for (double bw : sc1.bandwidths) {
        for (int cls : {0, 1}) {
            max_gap = std::max(
                max_gap,
                std::abs(sc1.at("optimal", bw, cls).mean_rate_satisfaction -
                         sc1.at("suboptimal", bw, cls).mean_rate_satisfaction));
        }
    }
    if (max_gap > 0.10) {
        ok8 = false;
        why8 = "optimal vs suboptimal rate satisfaction gap " +
               std::to_string(100.0 * max_gap) + "pp exceeds 10pp";
    }
    {
        std::ostringstream os;
        const double h50o = sc1.at("optimal", last, 0).mean_rate_satisfaction;
        const double h50s = sc1.at("suboptimal", last, 0).mean_rate_satisfaction;
        os << "rate-satisfaction trends: HQoS@50 " << h50o << " / " << h50s
           << ", SQoS suboptimal@50 " << s50 << ", HQoS >= SQoS everywhere, "
              "max algo gap "
           << 100.0 * max_gap << "pp"
           << (why8.empty() ? "" : " (" + why8 + ")");
        report(8, ok8, os.str());
    }
}

void criterion_9_ith_sweep(const std::string& configs_dir) {
    std::vector<double> sq_ratio, hq_ratio;
    bool ok = true;
    std::string why;
    for (double frac : {0.25, 0.5, 0.75}) {
        auto raw = load_raw_config(configs_dir + "/fig3.cfg");
        raw.apply_override("primary.i_th_fraction=" + std::to_string(frac));
        const auto cfg = build_scenario_config(raw);
        const auto rep = run_scenario(cfg);
        double sq_before = 0.0, sq_after = 0.0, hq_before = 0.0, hq_after = 0.0;
        for (const auto& s : rep.summary) {
            // class_i_reduction_ratio already aggregates before/after per
            // class; recombine across bandwidths via the stored sums instead:
            (void)s;
        }
        for (const auto& r : rep.rows) {
            if (r.qos_class == QosClass::HQoS) {
                hq_before += r.i_before_w;
                hq_after += r.i_after_w;
            } else {
                sq_before += r.i_before_w;
                sq_after += r.i_after_w;
            }
        }
        sq_ratio.push_back(sq_before > 0 ? (sq_before - sq_after) / sq_before
                                         : 0.0);
        hq_ratio.push_back(hq_before > 0 ? (hq_before - hq_after) / hq_before
                                         : 0.0);
    }
    for (int i = 0; i < 3; ++i) {
        if (sq_ratio[i] < hq_ratio[i] - 1e-9) {
            ok = false;
            why = "SQoS reduction ratio below HQoS at level " + std::to_string(i);
        }
    }
    for (int i = 1; i < 3; ++i) {
        if (sq_ratio[i] > sq_ratio[i - 1] + 1e-9 ||
            hq_ratio[i] > hq_ratio[i - 1] + 1e-9) {
            ok = false;
            why = "reduction ratio increased with a looser threshold";
        }
    }
    if (!(sq_ratio[0] > sq_ratio[2] || hq_ratio[0] > hq_ratio[2])) {
        ok = false;
        why = "no strict decrease across the I_th levels";
    }
    std::ostringstream os;
    os << "interference reduction ratios across I_th fractions {0.25, 0.5, "
          "0.75}: SQoS ";
    for (double v : sq_ratio) os << v << " ";
    os << "| HQoS ";
    for (double v : hq_ratio) os << v << " ";
    if (!why.empty()) os << "(" << why << ")";
    report(9, ok, os.str());
}

void criterion_10_channel_statistics() {
    const auto profile = cm_profile("CM1");
    const int n = 10000;
    double energy_sum = 0.0, db1 = 0.0, db2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto ch = generate_channel(profile, mix_seed(1010, i));
        energy_sum += ch.total_tap_energy();
        const double db = 10.0 * std::log10(ch.shadowing_gain);
        db1 += db;
        db2 += db * db;
    }
    const double mean_energy = energy_sum / n;
    const double mean_db = db1 / n;
    const double std_db = std::sqrt(db2 / n - mean_db * mean_db);
    bool ok = mean_energy >= 0.97 && mean_energy <= 1.03;
    if (std::abs(std_db - profile.shadowing_std_db) >
        0.05 * profile.shadowing_std_db) {
        ok = false;
    }
    // Determinism: identical tap lists for an identical seed.
    const auto a = generate_channel(profile, 424242);
    const auto b = generate_channel(profile, 424242);
    bool same = a.taps.size() == b.taps.size() &&
                a.shadowing_gain == b.shadowing_gain;
    for (std::size_t i = 0; same && i < a.taps.size(); ++i) {
        same = a.taps[i].delay_ns == b.taps[i].delay_ns &&
               a.taps[i].gain == b.taps[i].gain;
    }
    if (!same) ok = false;
    std::ostringstream os;
    os << "CM1 over 1e4 draws: mean energy " << mean_energy
       << " (target 1 +- 3%), shadowing std " << std_db << " dB (target "
       << profile.shadowing_std_db << " +- 5%), seeded determinism "
       << (same ? "exact" : "BROKEN");
    report(10, ok, os.str());
}

void criterion_11_reproducibility(const std::string& configs_dir) {
    auto raw = load_raw_config(configs_dir + "/scenario1.cfg");
    raw.apply_override("run.n_trials=5");
    const auto cfg = build_scenario_config(raw);
    const auto r1 = run_scenario(cfg);
    const auto r2 = run_scenario(cfg);
    const bool ok = trials_csv(r1) == trials_csv(r2) &&
                    summary_csv(r1) == summary_csv(r2) &&
                    run_manifest(cfg) == run_manifest(cfg);
    report(11, ok, "identical config and seed give byte-identical CSVs and "
                   "manifest");
}

} // namespace

int main(int argc, char** argv) {
    const std::string configs_dir = argc > 1 ? argv[1] : "configs";

    criterion_1_eesm_properties();
    criterion_2_quadrature();
    criterion_3_suboptimal_assignment();
    criteria_4_5_optimal_vs_oracle();
    criterion_6_interference_control();

    const auto t0 = std::chrono::steady_clock::now();
    const auto sc1_cfg = load_scenario_config(configs_dir + "/scenario1.cfg");
    const auto sc2_cfg = load_scenario_config(configs_dir + "/scenario2.cfg");
    const auto sc1 = SummaryTable::from(run_scenario(sc1_cfg));
    const auto sc2 = SummaryTable::from(run_scenario(sc2_cfg));
    criteria_7_8_figure_trends(configs_dir, sc1, sc2, elapsed_s(t0));

    criterion_9_ith_sweep(configs_dir);
    criterion_10_channel_statistics();
    criterion_11_reproducibility(configs_dir);

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
