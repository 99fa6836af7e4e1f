#include "uwb/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "uwb/rng.hpp"

namespace uwb {

namespace {

struct GridBest {
    bool found = false;
    Eigen::VectorXd weights; // band power fractions of p_t
    double objective = 0.0;
};

/// Evaluates the SQoS sum rate (spectral) at band powers w * p_t for a fixed
/// assignment; returns nullopt when a hard-QoS target or the interference
/// threshold is violated.
class AssignmentEvaluator {
  public:
    AssignmentEvaluator(const std::vector<UserProfile>& profiles,
                        const SubbandQualityMatrix& e, double p_t,
                        const std::vector<PrimaryEnvironment>& primaries,
                        const RateModel& rm, const std::vector<int>& owner)
        : profiles_(profiles), e_(e), p_t_(p_t), primaries_(primaries), rm_(rm),
          owner_(owner) {}

    std::optional<double> operator()(const Eigen::VectorXd& w) const {
        const auto bands = static_cast<int>(owner_.size());
        Eigen::VectorXd rate = Eigen::VectorXd::Zero(e_.users());
        for (int b = 0; b < bands; ++b) {
            const int k = owner_[b];
            if (k < 0) continue;
            const double p = w[b] * p_t_;
            rate[k] += std::log2(1.0 + p * e_(k, b));
        }
        for (Eigen::Index k = 0; k < e_.users(); ++k) {
            if (profiles_[k].is_hqos() &&
                rm_.to_mbps(rate[k]) <
                    profiles_[k].requested_rate_mbps * (1.0 - 1e-12)) {
                return std::nullopt;
            }
        }
        for (const auto& env : primaries_) {
            double i_total = 0.0;
            for (int b = 0; b < bands; ++b) {
                if (owner_[b] >= 0) {
                    i_total += w[b] * p_t_ * env.factors.per_band[b];
                }
            }
            if (i_total > env.band.i_th * (1.0 + 1e-12)) return std::nullopt;
        }
        double obj = 0.0;
        for (Eigen::Index k = 0; k < e_.users(); ++k) {
            if (!profiles_[k].is_hqos()) obj += rate[k];
        }
        return obj;
    }

  private:
    const std::vector<UserProfile>& profiles_;
    const SubbandQualityMatrix& e_;
    double p_t_;
    const std::vector<PrimaryEnvironment>& primaries_;
    const RateModel& rm_;
    const std::vector<int>& owner_;
};

/// Dense search over the simplex sum(w) <= 1 with the given step count.
void simplex_scan(const AssignmentEvaluator& eval, int bands, int steps,
                  const Eigen::VectorXd& center, double radius, GridBest& best) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(bands);
    // Iterate an odometer over per-band candidate levels around the center.
    std::vector<std::vector<double>> levels(bands);
    for (int b = 0; b < bands; ++b) {
        for (int s = 0; s <= steps; ++s) {
            const double v =
                center[b] - radius + 2.0 * radius * s / std::max(1, steps);
            if (v >= -1e-12 && v <= 1.0 + 1e-12) {
                levels[b].push_back(std::clamp(v, 0.0, 1.0));
            }
        }
        if (levels[b].empty()) levels[b].push_back(std::clamp(center[b], 0.0, 1.0));
    }
    std::vector<std::size_t> idx(bands, 0);
    while (true) {
        double sum = 0.0;
        for (int b = 0; b < bands; ++b) {
            w[b] = levels[b][idx[b]];
            sum += w[b];
        }
        if (sum <= 1.0 + 1e-12) {
            if (const auto obj = eval(w)) {
                if (!best.found || *obj > best.objective + 1e-15) {
                    best.found = true;
                    best.objective = *obj;
                    best.weights = w;
                }
            }
        }
        int b = 0;
        for (; b < bands; ++b) {
            if (++idx[b] < levels[b].size()) break;
            idx[b] = 0;
        }
        if (b == bands) break;
    }
}

} // namespace

std::optional<OracleOutcome>
oracle_exhaustive(const std::vector<UserProfile>& profiles,
                  const SubbandQualityMatrix& e, double p_t,
                  const std::vector<PrimaryEnvironment>& primaries,
                  const RateModel& rm, int grid_points, int refine_rounds) {
    const auto k_users = static_cast<int>(e.users());
    const auto bands = static_cast<int>(e.bands());
    if (k_users > 4 || bands > 4) {
        throw InvalidArgument("oracle_exhaustive limited to K <= 4, B <= 4");
    }

    std::optional<OracleOutcome> best;
    std::vector<int> owner(bands, 0);
    const auto n_assignments = static_cast<long>(std::pow(k_users, bands));
    for (long code = 0; code < n_assignments; ++code) {
        long c = code;
        for (int b = 0; b < bands; ++b) {
            owner[b] = static_cast<int>(c % k_users);
            c /= k_users;
        }
        AssignmentEvaluator eval(profiles, e, p_t, primaries, rm, owner);
        GridBest gb;
        Eigen::VectorXd center = Eigen::VectorXd::Constant(bands, 0.5);
        simplex_scan(eval, bands, grid_points, center, 0.5, gb);
        if (!gb.found) continue;
        double radius = 1.0 / grid_points;
        for (int r = 0; r < refine_rounds; ++r) {
            simplex_scan(eval, bands, 12, gb.weights, radius, gb);
            radius /= 5.0;
        }
        OracleOutcome out;
        out.rho = Eigen::MatrixXi::Zero(k_users, bands);
        out.power = Eigen::MatrixXd::Zero(k_users, bands);
        out.rates_mbps = Eigen::VectorXd::Zero(k_users);
        for (int b = 0; b < bands; ++b) {
            const int k = owner[b];
            out.rho(k, b) = 1;
            out.power(k, b) = gb.weights[b] * p_t;
            out.rates_mbps[k] +=
                rm.to_mbps(std::log2(1.0 + out.power(k, b) * e(k, b)));
        }
        out.sqos_sum_rate_mbps = rm.to_mbps(gb.objective);
        if (!best || out.sqos_sum_rate_mbps > best->sqos_sum_rate_mbps) {
            best = std::move(out);
        }
    }
    return best;
}

RandomInstance make_random_instance(std::uint64_t seed) {
    Rng rng(seed);
    RandomInstance inst;
    const double hqos_rates[] = {160.0, 200.0, 320.0, 400.0, 480.0};
    const double hqos_rate =
        hqos_rates[rng.next_u64() % (sizeof(hqos_rates) / sizeof(double))];
    const double sqos_rates[] = {53.3, 80.0, 110.0};
    inst.profiles.emplace_back(1, QosClass::HQoS, hqos_rate, 5.0);
    inst.profiles.emplace_back(
        2, QosClass::SQoS, sqos_rates[rng.next_u64() % 3], 50.0);
    inst.profiles.emplace_back(
        3, QosClass::SQoS, sqos_rates[rng.next_u64() % 3], 100.0);
    inst.e = Eigen::MatrixXd(3, 3);
    for (int k = 0; k < 3; ++k) {
        for (int b = 0; b < 3; ++b) {
            inst.e(k, b) = 2.0 * std::exp(1.2 * rng.normal());
        }
    }
    inst.p_t = 1.0;
    return inst;
}

} // namespace uwb
