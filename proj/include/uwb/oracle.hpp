#ifndef UWB_ORACLE_HPP
#define UWB_ORACLE_HPP

#include <cstdint>
#include <optional>

#include "uwb/allocator.hpp"

namespace uwb {

/// Exhaustive reference solver for small instances (K <= 4, B <= 4):
/// enumerates every band-to-user assignment and, for each, searches band
/// powers on a dense simplex grid with local refinement, maximizing the
/// soft-QoS sum rate subject to the hard-QoS rate targets, the total power
/// budget, and (when primaries are present) the direct interference
/// threshold. Returns nullopt when no assignment admits a feasible point.
struct OracleOutcome {
    Eigen::MatrixXi rho;
    Eigen::MatrixXd power;
    double sqos_sum_rate_mbps = 0.0;
    Eigen::VectorXd rates_mbps;
};

std::optional<OracleOutcome>
oracle_exhaustive(const std::vector<UserProfile>& profiles,
                  const SubbandQualityMatrix& e, double p_t,
                  const std::vector<PrimaryEnvironment>& primaries,
                  const RateModel& rm, int grid_points = 24,
                  int refine_rounds = 3);

/// A randomized K=3 / B=3 test instance: one hard-QoS user plus two soft-QoS
/// users with log-normal sub-band qualities. Deterministic per seed.
struct RandomInstance {
    std::vector<UserProfile> profiles;
    Eigen::MatrixXd e;
    double p_t = 1.0;
};

RandomInstance make_random_instance(std::uint64_t seed);

} // namespace uwb

#endif
