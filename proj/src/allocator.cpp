#include "uwb/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace uwb {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.6931471805599453;

std::uint64_t hash_rho(const Eigen::MatrixXi& rho) {
    std::uint64_t h = 1469598103934665603ULL;
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
        for (Eigen::Index i = 0; i < rho.rows(); ++i) {
            h ^= static_cast<std::uint64_t>(rho(i, j)) + 0x9e3779b9ULL;
            h *= 1099511628211ULL;
        }
    }
    return h;
}

/// Spectral rate of one (power, quality) pair.
double spectral_rate(double p, double e) {
    return p > 0.0 ? std::log2(1.0 + p * e) : 0.0;
}

Eigen::VectorXd spectral_rates(const Eigen::MatrixXi& rho, const Eigen::MatrixXd& p,
                               const SubbandQualityMatrix& e) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(rho.rows());
    for (Eigen::Index k = 0; k < rho.rows(); ++k) {
        for (Eigen::Index b = 0; b < rho.cols(); ++b) {
            if (rho(k, b)) r[k] += spectral_rate(p(k, b), e(k, b));
        }
    }
    return r;
}

/// Ranks users by the priority order; rank[k] small means high priority.
std::vector<int> priority_rank(const std::vector<UserProfile>& profiles) {
    const auto order = priority_order(profiles);
    std::vector<int> rank(profiles.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
    return rank;
}

Eigen::MatrixXi assign_per_band_argmax(const Eigen::MatrixXd& h,
                                       const std::vector<int>& rank) {
    const Eigen::Index k_users = h.rows();
    const Eigen::Index bands = h.cols();
    Eigen::MatrixXi rho = Eigen::MatrixXi::Zero(k_users, bands);
    std::vector<int> by_rank(k_users);
    std::iota(by_rank.begin(), by_rank.end(), 0);
    std::sort(by_rank.begin(), by_rank.end(),
              [&](int a, int b) { return rank[a] < rank[b]; });
    for (Eigen::Index b = 0; b < bands; ++b) {
        int best = -1;
        double best_h = kNegInf;
        for (int k : by_rank) { // priority order; strict > keeps ties at the top
            if (h(k, b) > best_h) {
                best_h = h(k, b);
                best = k;
            }
        }
        if (best >= 0 && best_h != kNegInf) rho(best, b) = 1;
    }
    return rho;
}

// Max-weight perfect matching by exhaustive permutations (deterministic
// tie-breaking via priority ranks). Used for K = B <= 8.
Eigen::MatrixXi assign_matching_exhaustive(const Eigen::MatrixXd& h,
                                           const std::vector<int>& rank) {
    const int n = static_cast<int>(h.rows());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best_perm;
    double best_sum = kNegInf;
    std::vector<int> best_key, key(n);
    do {
        double s = 0.0;
        for (int b = 0; b < n; ++b) {
            const double v = h(perm[b], b);
            s += (v == kNegInf) ? -1e30 : v;
        }
        for (int b = 0; b < n; ++b) key[b] = rank[perm[b]];
        if (s > best_sum + 1e-15 ||
            (s > best_sum - 1e-15 && (best_perm.empty() || key < best_key))) {
            best_sum = s;
            best_perm = perm;
            best_key = key;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    Eigen::MatrixXi rho = Eigen::MatrixXi::Zero(n, n);
    for (int b = 0; b < n; ++b) {
        if (h(best_perm[b], b) != kNegInf) rho(best_perm[b], b) = 1;
    }
    return rho;
}

// Hungarian algorithm (potentials form) for larger square instances.
Eigen::MatrixXi assign_matching_hungarian(const Eigen::MatrixXd& h) {
    const int n = static_cast<int>(h.rows());
    // Minimize cost = -H, with -inf mapped to a large finite cost.
    Eigen::MatrixXd cost(n, n);
    double scale = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (h(i, j) != kNegInf) scale = std::max(scale, std::abs(h(i, j)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cost(i, j) = (h(i, j) == kNegInf) ? 1e6 * scale : -h(i, j);

    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            double delta = std::numeric_limits<double>::infinity();
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    Eigen::MatrixXi rho = Eigen::MatrixXi::Zero(n, n);
    for (int j = 1; j <= n; ++j) {
        if (p[j] > 0 && h(p[j] - 1, j - 1) != kNegInf) rho(p[j] - 1, j - 1) = 1;
    }
    return rho;
}

struct InnerSolution {
    Eigen::MatrixXi rho;
    Eigen::MatrixXd power;
    double mu = 0.0;
};

/// Fixed point of (H -> assignment -> water level) for the given multipliers.
InnerSolution solve_inner(const Eigen::VectorXd& alpha, const SubbandQualityMatrix& e,
                          double p_t, const SolverConfig& cfg,
                          const std::vector<UserProfile>& profiles, double mu_init) {
    InnerSolution sol;
    double mu = mu_init > 0.0 ? mu_init : 1.0;
    std::vector<std::uint64_t> seen;
    Eigen::MatrixXi prev;
    bool have_prev = false;
    for (int it = 0; it < cfg.max_inner_iters; ++it) {
        LagrangeState st{alpha, mu};
        const Eigen::MatrixXd h = compute_H(st, e, profiles);
        Eigen::MatrixXi rho = assign_subbands(h, cfg.assignment_mode, profiles);
        if (rho.sum() == 0) {
            mu *= 4.0; // water level below every 1/(alpha E); raise and retry
            continue;
        }
        auto [p, mu2] = waterfill_power(rho, alpha, e, p_t, cfg.waterlevel_bisect_tol);
        sol = {rho, p, mu2};
        if (have_prev && rho == prev) return sol;
        const std::uint64_t hh = hash_rho(rho);
        if (std::find(seen.begin(), seen.end(), hh) != seen.end()) return sol;
        seen.push_back(hh);
        prev = rho;
        have_prev = true;
        mu = mu2;
    }
    return sol;
}

struct PolishedCandidate {
    bool feasible = false;
    Eigen::MatrixXd power;
    double mu = 0.0;
    Eigen::VectorXd alpha; // waterfilling-form duals: P = alpha mu - 1/E
    double sqos_rate_spectral = 0.0;
};

/// Exact power refinement for a fixed assignment: each hard-QoS user gets
/// the minimum power meeting its target (per-user water level nu_k), the
/// remainder is water-filled over the soft-QoS entries. Infeasible when a
/// target cannot be met within the budget on the assigned bands. The result
/// keeps the waterfilling form P = alpha mu - 1/E with alpha_k = nu_k / mu.
PolishedCandidate polish_assignment(const std::vector<UserProfile>& profiles,
                                    const SubbandQualityMatrix& e, double p_t,
                                    const Eigen::VectorXd& target_spectral,
                                    double bisect_tol, const Eigen::MatrixXi& rho) {
    const Eigen::Index k_users = rho.rows();
    const Eigen::Index bands = rho.cols();
    PolishedCandidate cand;
    cand.power = Eigen::MatrixXd::Zero(k_users, bands);
    cand.alpha = Eigen::VectorXd::Ones(k_users);
    Eigen::VectorXd nu = Eigen::VectorXd::Zero(k_users);
    double used = 0.0;
    for (Eigen::Index k = 0; k < k_users; ++k) {
        if (!profiles[k].is_hqos() || target_spectral[k] <= 0.0) continue;
        std::vector<double> inv_e;
        for (Eigen::Index b = 0; b < bands; ++b) {
            if (rho(k, b)) inv_e.push_back(1.0 / e(k, b));
        }
        if (inv_e.empty()) return cand; // a target but no band: infeasible
        const auto rate_at = [&](double level) {
            double r = 0.0;
            for (const double ie : inv_e) {
                if (level > ie) r += std::log2(level / ie);
            }
            return r;
        };
        double hi = *std::min_element(inv_e.begin(), inv_e.end()) * 2.0;
        while (rate_at(hi) < target_spectral[k]) hi *= 2.0;
        double lo = 0.0;
        for (int it = 0; it < 200 && (hi - lo) > 1e-14 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (rate_at(mid) >= target_spectral[k] ? hi : lo) = mid;
        }
        nu[k] = hi; // the feasible side of the bisection
        for (Eigen::Index b = 0; b < bands; ++b) {
            if (rho(k, b)) {
                cand.power(k, b) = std::max(0.0, nu[k] - 1.0 / e(k, b));
                used += cand.power(k, b);
            }
        }
    }
    if (used > p_t * (1.0 + 1e-12)) return cand; // over budget: infeasible
    const double rem = std::max(0.0, p_t - used);

    Eigen::MatrixXi sqos_rho = rho;
    for (Eigen::Index k = 0; k < k_users; ++k) {
        if (profiles[k].is_hqos()) sqos_rho.row(k).setZero();
    }
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(k_users);
    cand.mu = nu.maxCoeff() > 0.0 ? nu.maxCoeff() : 1.0;
    if (sqos_rho.sum() > 0 && rem > 0.0) {
        auto [p_s, mu] = waterfill_power(sqos_rho, ones, e, rem, bisect_tol);
        for (Eigen::Index k = 0; k < k_users; ++k) {
            if (profiles[k].is_hqos()) continue;
            cand.power.row(k) = p_s.row(k);
        }
        cand.mu = mu;
    } else if (rem > 0.0) {
        // No soft-QoS entry to absorb the remainder: raise the level of the
        // highest-priority hard-QoS user (its target stays met).
        const auto order = priority_order(profiles);
        for (int k0 : order) {
            if (!profiles[k0].is_hqos() || rho.row(k0).sum() == 0) continue;
            Eigen::MatrixXi row = Eigen::MatrixXi::Zero(k_users, bands);
            row.row(k0) = rho.row(k0);
            const double p_user = cand.power.row(k0).sum() + rem;
            auto [p_r, nu2] = waterfill_power(row, ones, e, p_user, bisect_tol);
            cand.power.row(k0) = p_r.row(k0);
            nu[k0] = nu2;
            break;
        }
        cand.mu = nu.maxCoeff() > 0.0 ? nu.maxCoeff() : cand.mu;
    }
    for (Eigen::Index k = 0; k < k_users; ++k) {
        cand.alpha[k] =
            profiles[k].is_hqos() && nu[k] > 0.0 ? nu[k] / cand.mu : 1.0;
        if (!profiles[k].is_hqos()) {
            for (Eigen::Index b = 0; b < bands; ++b) {
                if (rho(k, b) && cand.power(k, b) > 0.0) {
                    cand.sqos_rate_spectral +=
                        std::log2(1.0 + cand.power(k, b) * e(k, b));
                }
            }
        }
    }
    cand.feasible = true;
    return cand;
}

AllocationResult make_result(const std::vector<UserProfile>& profiles,
                             const Eigen::MatrixXi& rho, const Eigen::MatrixXd& power,
                             const SubbandQualityMatrix& e, const RateModel& rm) {
    AllocationResult res;
    res.rho = rho;
    res.power = power;
    res.power_red = Eigen::MatrixXd::Zero(power.rows(), power.cols());
    const Eigen::VectorXd r = spectral_rates(rho, power, e);
    res.pre_control_rate_mbps = r * rm.subband_data_bandwidth_mhz;
    res.achieved_rate_mbps = res.pre_control_rate_mbps;
    res.total_power_used = power.sum();
    res.hqos_satisfiable.assign(profiles.size(), true);
    for (std::size_t k = 0; k < profiles.size(); ++k) {
        if (profiles[k].is_hqos()) {
            res.hqos_satisfiable[k] =
                res.pre_control_rate_mbps[static_cast<Eigen::Index>(k)] >=
                profiles[k].requested_rate_mbps * (1.0 - 1e-9);
        }
    }
    res.interferer.assign(profiles.size(), false);
    return res;
}

/// Index of the primary overlapping band b, or -1.
int primary_on_band(const std::vector<PrimaryEnvironment>& primaries, int b) {
    for (std::size_t u = 0; u < primaries.size(); ++u) {
        if (primaries[u].band.overlapped_band == b &&
            primaries[u].band.overlapped_count() > 0) {
            return static_cast<int>(u);
        }
    }
    return -1;
}

} // namespace

void SolverConfig::validate() const {
    if (!(delta > 0.0)) throw InvalidArgument("solver delta must be > 0");
    if (!(power_tolerance > 0.0 && power_tolerance < 1.0))
        throw InvalidArgument("power_tolerance must be in (0, 1)");
    if (!(waterlevel_bisect_tol > 0.0 && waterlevel_bisect_tol < 1.0))
        throw InvalidArgument("waterlevel_bisect_tol must be in (0, 1)");
    if (max_outer_iters < 1 || max_inner_iters < 1 || stall_window < 1)
        throw InvalidArgument("iteration caps must be >= 1");
}

double PrimaryLedger::class_total(const std::vector<UserProfile>& profiles,
                                  QosClass c, bool use_after) const {
    const Eigen::VectorXd& v = use_after ? after_user : before_user;
    double t = 0.0;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (profiles[k].qos_class == c) t += v[k];
    }
    return t;
}

std::string AllocationFlags::to_string() const {
    std::string s;
    auto add = [&](const char* f) {
        if (!s.empty()) s += ';';
        s += f;
    };
    if (max_iters_exceeded) add("MAX_ITERS");
    if (infeasible_targets) add("INFEASIBLE_TARGETS");
    if (still_over_threshold) add("STILL_OVER_THRESHOLD");
    return s;
}

double achieved_rate_mbps(double p_w, double e_per_w, const RateModel& rm) {
    if (p_w < 0.0 || e_per_w <= 0.0) {
        throw InvalidArgument("achieved_rate needs P >= 0 and E > 0");
    }
    return rm.to_mbps(spectral_rate(p_w, e_per_w));
}

PrimaryEnvironment make_primary_environment(double center_ghz, double bandwidth_mhz,
                                            const BandPlan& plan, double i_th) {
    PrimaryEnvironment env;
    env.band = make_primary(center_ghz, bandwidth_mhz, plan, i_th);
    env.factors = compute_overlap_factors(env.band, plan);
    return env;
}

Eigen::MatrixXd compute_H(const LagrangeState& state, const SubbandQualityMatrix& e,
                          const std::vector<UserProfile>& profiles) {
    if (state.alpha.size() != e.users() ||
        static_cast<Eigen::Index>(profiles.size()) != e.users()) {
        throw InvalidArgument("compute_H: alpha/profile size mismatch");
    }
    if (!(state.mu > 0.0)) throw InvalidArgument("compute_H: mu must be > 0");
    Eigen::MatrixXd h(e.users(), e.bands());
    for (Eigen::Index k = 0; k < e.users(); ++k) {
        const double a = state.alpha[k];
        for (Eigen::Index b = 0; b < e.bands(); ++b) {
            const double x = a * state.mu * e(k, b);
            // Below the water level the user would get zero power; at x == 1
            // both terms vanish.
            h(k, b) = x >= 1.0 ? a * (std::log2(x) - (1.0 - 1.0 / x) / kLn2)
                               : kNegInf;
        }
    }
    return h;
}

Eigen::MatrixXi assign_subbands(const Eigen::MatrixXd& h, AssignmentMode mode,
                                const std::vector<UserProfile>& profiles) {
    const auto rank = priority_rank(profiles);
    if (mode == AssignmentMode::PerBandArgmax) {
        return assign_per_band_argmax(h, rank);
    }
    if (h.rows() != h.cols()) {
        throw InvalidArgument("one_band_per_user assignment requires K == B");
    }
    if (h.rows() <= 8) return assign_matching_exhaustive(h, rank);
    return assign_matching_hungarian(h);
}

std::pair<Eigen::MatrixXd, double> waterfill_power(const Eigen::MatrixXi& rho,
                                                   const Eigen::VectorXd& alpha,
                                                   const SubbandQualityMatrix& e,
                                                   double p_t, double rel_tol) {
    if (!(p_t > 0.0)) throw InvalidArgument("waterfill: P_T must be > 0");
    struct Entry {
        Eigen::Index k, b;
        double a, inv_e;
    };
    std::vector<Entry> entries;
    for (Eigen::Index k = 0; k < rho.rows(); ++k) {
        for (Eigen::Index b = 0; b < rho.cols(); ++b) {
            if (rho(k, b)) entries.push_back({k, b, alpha[k], 1.0 / e(k, b)});
        }
    }
    if (entries.empty()) {
        throw InfeasibleError("waterfill: no assigned (user, band) entries");
    }
    const auto total_at = [&](double mu) {
        double s = 0.0;
        for (const auto& en : entries) s += std::max(0.0, en.a * mu - en.inv_e);
        return s;
    };
    double sum_inv_e = 0.0, sum_a = 0.0;
    for (const auto& en : entries) {
        sum_inv_e += en.inv_e;
        sum_a += en.a;
    }
    double lo = 0.0;
    double hi = (p_t + sum_inv_e) / sum_a; // total_at(hi) >= p_t by convexity
    for (int it = 0; it < 200 && (hi - lo) > rel_tol * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (total_at(mid) < p_t ? lo : hi) = mid;
    }
    const double mu = 0.5 * (lo + hi);
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(rho.rows(), rho.cols());
    for (const auto& en : entries) {
        p(en.k, en.b) = std::max(0.0, en.a * mu - en.inv_e);
    }
    return {p, mu};
}

double rate_with_reductions(const AllocationResult& alloc, int k,
                            const std::vector<PrimaryEnvironment>& primaries,
                            const SubbandQualityMatrix& e, const RateModel& rm,
                            const BandPlan& plan) {
    const double n = plan.n_subcarriers;
    double r = 0.0;
    for (Eigen::Index b = 0; b < alloc.rho.cols(); ++b) {
        if (!alloc.rho(k, b)) continue;
        const double p = alloc.power(k, b);
        const double red = alloc.power_red(k, b);
        const int u = primary_on_band(primaries, static_cast<int>(b));
        if (u < 0 || red <= 0.0) {
            r += spectral_rate(p - red, e(k, b)); // red == 0 here normally
            continue;
        }
        const double m = primaries[u].band.overlapped_count();
        const double ov_gross = p * m / n;
        const double residual = std::max(0.0, ov_gross - red);
        r += (n - m) / n * spectral_rate(p, e(k, b));
        if (residual > 0.0) {
            r += m / n * spectral_rate(residual * n / m, e(k, b));
        }
    }
    return rm.to_mbps(r);
}

double hqos_reduction_cap(const AllocationResult& alloc, int k, int band,
                          const PrimaryEnvironment& primary,
                          const std::vector<UserProfile>& profiles,
                          const SubbandQualityMatrix& e, const RateModel& rm,
                          const BandPlan& plan) {
    const double target = profiles[k].requested_rate_mbps;
    const double m = primary.band.overlapped_count();
    if (m <= 0) return 0.0;
    const double ov_gross = alloc.power(k, band) * m / plan.n_subcarriers;
    if (ov_gross <= 0.0) return 0.0;

    std::vector<PrimaryEnvironment> envs{primary};
    AllocationResult probe = alloc;
    const auto rate_at = [&](double red) {
        probe.power_red(k, band) = red;
        return rate_with_reductions(probe, k, envs, e, rm, plan);
    };
    if (rate_at(0.0) < target * (1.0 - 1e-12)) return 0.0;
    if (rate_at(ov_gross) >= target) return ov_gross;
    double lo = 0.0, hi = ov_gross;
    for (int it = 0; it < 100 && (hi - lo) > 1e-13 * ov_gross; ++it) {
        const double mid = 0.5 * (lo + hi);
        (rate_at(mid) >= target ? lo : hi) = mid;
    }
    return lo;
}

void interference_control(AllocationResult& alloc,
                          const std::vector<PrimaryEnvironment>& primaries,
                          const std::vector<UserProfile>& profiles,
                          const SubbandQualityMatrix& e, const RateModel& rm,
                          const BandPlan& plan) {
    const int k_users = static_cast<int>(profiles.size());
    const double n = plan.n_subcarriers;
    alloc.ledger.clear();
    alloc.interferer.assign(profiles.size(), false);

    // A user interferes when one of its assigned bands has a nonzero factor.
    for (int k = 0; k < k_users; ++k) {
        for (Eigen::Index b = 0; b < alloc.rho.cols(); ++b) {
            if (!alloc.rho(k, b)) continue;
            for (const auto& env : primaries) {
                if (env.factors.per_band[b] != 0.0) alloc.interferer[k] = true;
            }
        }
    }

    const auto rank = priority_rank(profiles);
    for (const auto& env : primaries) {
        const int ov_band = env.band.overlapped_band;
        const double m = env.band.overlapped_count();
        const double s_ov =
            m > 0 ? env.factors.per_subcarrier.segment(env.band.n_ud,
                                                       env.band.overlapped_count())
                        .sum()
                  : 0.0;

        // Contribution of (k, b) given the current reduction state.
        const auto contribution = [&](int k, int b) {
            if (!alloc.rho(k, b)) return 0.0;
            double c = alloc.power(k, b) * env.factors.per_band[b];
            if (b == ov_band && m > 0) {
                c -= alloc.power_red(k, b) * (n / m) * s_ov;
            }
            return std::max(0.0, c);
        };
        const auto per_user = [&]() {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(k_users);
            for (int k = 0; k < k_users; ++k) {
                for (int b = 0; b < alloc.rho.cols(); ++b) v[k] += contribution(k, b);
            }
            return v;
        };
        const auto total = [&]() { return per_user().sum(); };

        PrimaryLedger led;
        led.before_user = per_user();
        led.before = led.before_user.sum();

        if (led.before > env.band.i_th && m > 0) {
            led.control_triggered = true;
            // Soft-QoS interferers: annul the overlapped subcarriers outright.
            std::vector<int> order(k_users);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](int a, int b) { return rank[a] > rank[b]; });
            for (int k : order) {
                if (profiles[k].is_hqos() || !alloc.rho(k, ov_band)) continue;
                const double ov_gross = alloc.power(k, ov_band) * m / n;
                alloc.power_red(k, ov_band) =
                    std::max(alloc.power_red(k, ov_band), ov_gross);
            }
            // Hard-QoS interferers: metered reduction, capped so the rate
            // target still holds; lowest priority reduces first.
            double current = total();
            for (int k : order) {
                if (current <= env.band.i_th) break;
                if (!profiles[k].is_hqos() || !alloc.rho(k, ov_band)) continue;
                const double cap = hqos_reduction_cap(alloc, k, ov_band, env,
                                                      profiles, e, rm, plan);
                const double ov_gross = alloc.power(k, ov_band) * m / n;
                const double needed = (current - env.band.i_th) * m / (n * s_ov);
                const double prev = alloc.power_red(k, ov_band);
                const double x = std::min({prev + needed, cap, ov_gross});
                alloc.power_red(k, ov_band) = std::max(prev, x);
                current = total();
            }
            if (current > env.band.i_th * (1.0 + 1e-12)) {
                alloc.flags.still_over_threshold = true;
            }
        }
        led.after_user = per_user();
        led.after = led.after_user.sum();
        alloc.ledger.push_back(led);
    }

    for (int k = 0; k < k_users; ++k) {
        alloc.achieved_rate_mbps[k] =
            rate_with_reductions(alloc, k, primaries, e, rm, plan);
    }
    alloc.total_power_used = (alloc.power - alloc.power_red).sum();
}

AllocationResult optimal_allocate(const std::vector<UserProfile>& profiles,
                                  const SubbandQualityMatrix& e, double p_t,
                                  const std::vector<PrimaryEnvironment>& primaries,
                                  const SolverConfig& cfg, const RateModel& rm,
                                  const BandPlan& plan) {
    cfg.validate();
    const auto k_users = e.users();
    if (static_cast<Eigen::Index>(profiles.size()) != k_users) {
        throw InvalidArgument("optimal_allocate: profile/matrix size mismatch");
    }
    Eigen::VectorXd alpha = Eigen::VectorXd::Ones(k_users);
    Eigen::VectorXd target = Eigen::VectorXd::Zero(k_users);
    bool any_hqos = false;
    for (Eigen::Index k = 0; k < k_users; ++k) {
        if (profiles[k].is_hqos()) {
            alpha[k] = 1.0 + cfg.delta;
            target[k] = rm.to_spectral(profiles[k].requested_rate_mbps);
            any_hqos = true;
        }
    }

    // Initial water level: quality-argmax assignment.
    Eigen::MatrixXi rho0 = Eigen::MatrixXi::Zero(k_users, e.bands());
    const auto rank = priority_rank(profiles);
    for (Eigen::Index b = 0; b < e.bands(); ++b) {
        Eigen::Index best = 0;
        for (Eigen::Index k = 1; k < k_users; ++k) {
            if (e(k, b) > e(best, b) ||
                (e(k, b) == e(best, b) && rank[k] < rank[best])) {
                best = k;
            }
        }
        rho0(best, b) = 1;
    }
    double mu = waterfill_power(rho0, alpha, e, p_t, cfg.waterlevel_bisect_tol).second;

    if (cfg.algo_variant == AlgoVariant::LiteralStep3c && any_hqos) {
        // Literal variant: fixed water level; all hard-QoS multipliers chase
        // the power total by +-delta/2 while the rate loop raises deficits.
        InnerSolution cur;
        AllocationFlags flags;
        int it = 0;
        double mu_fixed = mu;
        for (; it < cfg.max_outer_iters; ++it) {
            LagrangeState st{alpha, mu_fixed};
            const Eigen::MatrixXd h = compute_H(st, e, profiles);
            Eigen::MatrixXi rho = assign_subbands(h, cfg.assignment_mode, profiles);
            Eigen::MatrixXd p = Eigen::MatrixXd::Zero(k_users, e.bands());
            for (Eigen::Index k = 0; k < k_users; ++k)
                for (Eigen::Index b = 0; b < e.bands(); ++b)
                    if (rho(k, b))
                        p(k, b) = std::max(0.0, alpha[k] * mu_fixed - 1.0 / e(k, b));
            cur = {rho, p, mu_fixed};
            const Eigen::VectorXd rates = spectral_rates(rho, p, e);
            Eigen::Index worst = -1;
            double worst_deficit = 0.0;
            for (Eigen::Index k = 0; k < k_users; ++k) {
                if (!profiles[k].is_hqos()) continue;
                const double d = target[k] - rates[k];
                if (d > worst_deficit + 1e-12) {
                    worst_deficit = d;
                    worst = k;
                }
            }
            if (worst >= 0) {
                alpha[worst] += cfg.delta;
                continue;
            }
            const double pt_cur = p.sum();
            if (std::abs(pt_cur - p_t) <= cfg.power_tolerance * p_t) break;
            const double step = (pt_cur < p_t ? 1.0 : -1.0) * cfg.delta / 2.0;
            for (Eigen::Index k = 0; k < k_users; ++k) {
                if (profiles[k].is_hqos()) alpha[k] = std::max(1.0, alpha[k] + step);
            }
        }
        if (it >= cfg.max_outer_iters) flags.max_iters_exceeded = true;
        AllocationResult res = make_result(profiles, cur.rho, cur.power, e, rm);
        res.state = {alpha, mu_fixed};
        res.outer_iterations = it;
        res.flags = flags;
        interference_control(res, primaries, profiles, e, rm, plan);
        return res;
    }

    InnerSolution cur = solve_inner(alpha, e, p_t, cfg, profiles, mu);
    InnerSolution best = cur;
    Eigen::VectorXd best_alpha = alpha;
    double best_deficit = std::numeric_limits<double>::infinity();
    bool satisfied = false;
    int stall = 0;
    int it = 0;
    AllocationFlags flags;
    // Distinct assignments visited along the multiplier path; the final
    // refinement picks the best of them.
    std::vector<Eigen::MatrixXi> visited{rho0, cur.rho};
    std::vector<std::uint64_t> visited_hash{hash_rho(rho0), hash_rho(cur.rho)};
    const auto record = [&](const Eigen::MatrixXi& rho) {
        const std::uint64_t h = hash_rho(rho);
        if (std::find(visited_hash.begin(), visited_hash.end(), h) ==
            visited_hash.end()) {
            visited_hash.push_back(h);
            visited.push_back(rho);
        }
    };
    for (; it < cfg.max_outer_iters; ++it) {
        const Eigen::VectorXd rates = spectral_rates(cur.rho, cur.power, e);
        double total_deficit = 0.0, worst_deficit = 0.0;
        Eigen::Index worst = -1;
        for (Eigen::Index k = 0; k < k_users; ++k) {
            if (!profiles[k].is_hqos()) continue;
            const double d = target[k] - rates[k];
            if (d > 1e-9 && d > worst_deficit) {
                worst_deficit = d;
                worst = k;
            }
            total_deficit += std::max(0.0, d);
        }
        if (worst < 0) {
            satisfied = true;
            best = cur;
            best_alpha = alpha;
            break;
        }
        if (total_deficit < best_deficit - 1e-15) {
            best_deficit = total_deficit;
            best = cur;
            best_alpha = alpha;
            stall = 0;
        } else if (++stall >= cfg.stall_window) {
            flags.infeasible_targets = true;
            break;
        }
        alpha[worst] += cfg.delta;
        cur = solve_inner(alpha, e, p_t, cfg, profiles, cur.mu);
        record(cur.rho);
    }
    if (it >= cfg.max_outer_iters && !satisfied) flags.max_iters_exceeded = true;

    if (any_hqos) {
        // The upward multiplier loop only explores alpha >= 1 + delta; when
        // the rate constraint is loose the binding multiplier lies below 1
        // (the hard-QoS user should hold as little as possible). Sweep the
        // hard-QoS multipliers down toward zero to collect those candidate
        // assignments as well.
        Eigen::VectorXd alpha_down = Eigen::VectorXd::Ones(k_users);
        double level = 1.0;
        double mu_seed = cur.mu;
        while (level > cfg.delta / 4.0) {
            level -= cfg.delta;
            if (level <= 0.0) break;
            for (Eigen::Index k = 0; k < k_users; ++k) {
                if (profiles[k].is_hqos()) alpha_down[k] = level;
            }
            const InnerSolution down =
                solve_inner(alpha_down, e, p_t, cfg, profiles, mu_seed);
            record(down.rho);
            mu_seed = down.mu;
        }
        // Refine powers exactly on every visited assignment and keep the
        // feasible one with the largest soft-QoS rate.
        const PolishedCandidate* winner = nullptr;
        std::vector<PolishedCandidate> cands;
        cands.reserve(visited.size());
        for (const auto& rho : visited) {
            cands.push_back(polish_assignment(profiles, e, p_t, target,
                                              cfg.waterlevel_bisect_tol, rho));
        }
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (!cands[i].feasible) continue;
            if (winner == nullptr ||
                cands[i].sqos_rate_spectral > winner->sqos_rate_spectral + 1e-12) {
                winner = &cands[i];
                best.rho = visited[i];
            }
        }
        if (winner != nullptr) {
            best.power = winner->power;
            best.mu = winner->mu;
            best_alpha = winner->alpha;
            flags.infeasible_targets = false;
            flags.max_iters_exceeded = false;
        }
    }

    AllocationResult res = make_result(profiles, best.rho, best.power, e, rm);
    res.state = {best_alpha, best.mu};
    res.outer_iterations = it;
    res.flags = flags;
    interference_control(res, primaries, profiles, e, rm, plan);
    return res;
}

AllocationResult suboptimal_allocate(const std::vector<UserProfile>& profiles,
                                     const SubbandQualityMatrix& e, double p_t,
                                     const std::vector<PrimaryEnvironment>& primaries,
                                     const SolverConfig& cfg, const RateModel& rm,
                                     const BandPlan& plan) {
    cfg.validate();
    const auto k_users = e.users();
    if (static_cast<Eigen::Index>(profiles.size()) != k_users) {
        throw InvalidArgument("suboptimal_allocate: profile/matrix size mismatch");
    }
    // Cross-layer selector: absolute weight times sub-band quality.
    Eigen::MatrixXd h(k_users, e.bands());
    for (Eigen::Index k = 0; k < k_users; ++k) {
        for (Eigen::Index b = 0; b < e.bands(); ++b) {
            h(k, b) = profiles[k].w_k * e(k, b);
        }
    }
    const Eigen::MatrixXi rho = assign_subbands(h, cfg.assignment_mode, profiles);
    Eigen::MatrixXd power = Eigen::MatrixXd::Zero(k_users, e.bands());
    for (Eigen::Index b = 0; b < e.bands(); ++b) {
        for (Eigen::Index k = 0; k < k_users; ++k) {
            if (rho(k, b)) power(k, b) = p_t / e.bands();
        }
    }

    AllocationResult res = make_result(profiles, rho, power, e, rm);
    interference_control(res, primaries, profiles, e, rm, plan);

    // QoS refinement: hand the removed power to the most deficient hard-QoS
    // user that is not in conflict with any primary.
    const double pool = res.power_red.sum();
    if (pool > 0.0) {
        const auto rank = priority_rank(profiles);
        int pick = -1;
        double pick_deficit = 0.0;
        for (Eigen::Index k = 0; k < k_users; ++k) {
            if (!profiles[k].is_hqos() || res.interferer[k]) continue;
            const double d =
                profiles[k].requested_rate_mbps - res.achieved_rate_mbps[k];
            if (d > 1e-12 &&
                (pick < 0 || d > pick_deficit + 1e-15 ||
                 (std::abs(d - pick_deficit) <= 1e-15 && rank[k] < rank[pick]))) {
                pick = static_cast<int>(k);
                pick_deficit = d;
            }
        }
        if (pick >= 0) {
            int band = -1;
            for (Eigen::Index b = 0; b < e.bands(); ++b) {
                if (res.rho(pick, b) && (band < 0 || e(pick, b) > e(pick, band))) {
                    band = static_cast<int>(b);
                }
            }
            if (band >= 0) {
                res.power(pick, band) += pool;
                res.achieved_rate_mbps[pick] =
                    rate_with_reductions(res, pick, primaries, e, rm, plan);
                res.total_power_used = (res.power - res.power_red).sum();
            }
        }
    }
    return res;
}

} // namespace uwb
