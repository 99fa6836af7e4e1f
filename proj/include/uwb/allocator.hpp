#ifndef UWB_ALLOCATOR_HPP
#define UWB_ALLOCATOR_HPP

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

#include "uwb/band_plan.hpp"
#include "uwb/interference.hpp"
#include "uwb/mac_profile.hpp"
#include "uwb/mcs.hpp"

namespace uwb {

/// Conversion between the spectral rate log2(1 + P*E) of one sub-band and
/// Mbps, via the effective data bandwidth (100 of 128 carriers of 528 MHz).
struct RateModel {
    double subband_data_bandwidth_mhz = 412.5;

    double to_mbps(double bits_per_s_per_hz) const {
        return bits_per_s_per_hz * subband_data_bandwidth_mhz;
    }
    double to_spectral(double mbps) const {
        return mbps / subband_data_bandwidth_mhz;
    }
};

/// Rate of one user on one sub-band at power p (W) and quality e (1/W), Mbps.
double achieved_rate_mbps(double p_w, double e_per_w, const RateModel& rm);

enum class AssignmentMode { PerBandArgmax, OneBandPerUser };
enum class AlgoVariant { Bisect, LiteralStep3c };

struct SolverConfig {
    double delta = 0.05;           // alpha increment
    double power_tolerance = 1e-4; // |P' - P_T| / P_T acceptance
    int max_outer_iters = 10000;
    double waterlevel_bisect_tol = 1e-10; // relative, on mu
    AssignmentMode assignment_mode = AssignmentMode::PerBandArgmax;
    AlgoVariant algo_variant = AlgoVariant::Bisect;
    int max_inner_iters = 64;  // assignment / water-level fixed point
    int stall_window = 200;    // outer iters without deficit improvement

    void validate() const;
};

/// Dual variables of the allocation problem: per-user multipliers alpha_k
/// (fixed at 1 for SQoS users) and the water level mu.
struct LagrangeState {
    Eigen::VectorXd alpha;
    double mu = 0.0;
};

struct AllocationFlags {
    bool max_iters_exceeded = false;
    bool infeasible_targets = false;
    bool still_over_threshold = false;

    std::string to_string() const;
};

/// Interference bookkeeping for one primary user, in the units of P.
struct PrimaryLedger {
    double before = 0.0;
    double after = 0.0;
    Eigen::VectorXd before_user; // per-user contributions
    Eigen::VectorXd after_user;
    bool control_triggered = false;

    /// Aggregate contribution of one QoS class.
    double class_total(const std::vector<UserProfile>& profiles, QosClass c,
                       bool use_after) const;
};

/// A primary user together with its precomputed overlap factors.
struct PrimaryEnvironment {
    PrimaryUserBand band;
    OverlapFactors factors;
};

PrimaryEnvironment make_primary_environment(double center_ghz, double bandwidth_mhz,
                                            const BandPlan& plan, double i_th);

/// Joint sub-band / power allocation outcome.
///
/// `power` is the gross per-band allocation (including any QoS refinement
/// top-up); `power_red` is what interference control removed from overlapped
/// subcarriers, always <= power entrywise. The transmitted power is their
/// difference, and sums to at most P_T.
struct AllocationResult {
    Eigen::MatrixXi rho;       // K x B binary assignment
    Eigen::MatrixXd power;     // K x B gross allocated power, W
    Eigen::MatrixXd power_red; // K x B power removed by interference control
    Eigen::VectorXd achieved_rate_mbps;    // post-control
    Eigen::VectorXd pre_control_rate_mbps; // before interference control
    std::vector<PrimaryLedger> ledger;     // one per primary
    std::vector<bool> hqos_satisfiable;    // per user; true when the rate
                                           // target was met before control
                                           // (always true for SQoS)
    std::vector<bool> interferer; // per user: owns a band with I_b != 0
    double total_power_used = 0.0; // sum of transmitted power, W
    LagrangeState state;           // final duals (optimal path only)
    int outer_iterations = 0;
    AllocationFlags flags;
};

/// H_{k,b} = alpha_k [ log2(alpha_k mu E) - (1/ln2)(1 - 1/(alpha_k mu E)) ],
/// with entries clamped to -inf where alpha_k * mu * E <= 1 (zero power).
Eigen::MatrixXd compute_H(const LagrangeState& state, const SubbandQualityMatrix& e,
                          const std::vector<UserProfile>& profiles);

/// Per-band winner selection. PerBandArgmax gives each band to its largest-H
/// user (a user may win several bands); OneBandPerUser solves the max-weight
/// perfect matching (requires K == B). Ties go to the higher-priority user,
/// then the lower id. Bands whose column is all -inf stay unassigned.
Eigen::MatrixXi assign_subbands(const Eigen::MatrixXd& h, AssignmentMode mode,
                                const std::vector<UserProfile>& profiles);

/// Multi-level water-filling: P_{k,b} = rho * max(0, alpha_k mu - 1/E_{k,b})
/// with mu bisected so the total equals p_t. Throws InfeasibleError when no
/// entry is assigned.
std::pair<Eigen::MatrixXd, double> waterfill_power(const Eigen::MatrixXi& rho,
                                                   const Eigen::VectorXd& alpha,
                                                   const SubbandQualityMatrix& e,
                                                   double p_t, double rel_tol = 1e-10);

/// Iterative optimal allocation: raises the multiplier of the most deficient
/// hard-QoS user until every rate target is met (or iterations are exhausted /
/// progress stalls, returning the best effort with a flag), then applies
/// interference power control.
AllocationResult optimal_allocate(const std::vector<UserProfile>& profiles,
                                  const SubbandQualityMatrix& e, double p_t,
                                  const std::vector<PrimaryEnvironment>& primaries,
                                  const SolverConfig& cfg, const RateModel& rm,
                                  const BandPlan& plan);

/// Cross-layer suboptimal allocation: equal power split, assignment by the
/// weighted quality W_k * E_{k,b}, interference control, then redistribution
/// of the removed power to the most deficient non-conflicting hard-QoS user.
AllocationResult suboptimal_allocate(const std::vector<UserProfile>& profiles,
                                     const SubbandQualityMatrix& e, double p_t,
                                     const std::vector<PrimaryEnvironment>& primaries,
                                     const SolverConfig& cfg, const RateModel& rm,
                                     const BandPlan& plan);

/// Interference power control, applied in place. For every primary whose
/// aggregate interference exceeds its threshold: soft-QoS interferers annul
/// their power on the overlapped subcarriers; hard-QoS interferers reduce
/// theirs by at most the largest amount that keeps their achieved rate at the
/// requested target (found by bisection). Sets still_over_threshold when the
/// caps leave the aggregate above the threshold. Updates rates, the ledger,
/// and the interferer flags.
void interference_control(AllocationResult& alloc,
                          const std::vector<PrimaryEnvironment>& primaries,
                          const std::vector<UserProfile>& profiles,
                          const SubbandQualityMatrix& e, const RateModel& rm,
                          const BandPlan& plan);

/// Largest power reduction on the overlapped subcarriers of band `band` that
/// keeps user `k`'s total rate at or above its target; 0 if already short.
double hqos_reduction_cap(const AllocationResult& alloc, int k, int band,
                          const PrimaryEnvironment& primary,
                          const std::vector<UserProfile>& profiles,
                          const SubbandQualityMatrix& e, const RateModel& rm,
                          const BandPlan& plan);

/// Post-control rate of user k in Mbps given the current power/reduction
/// matrices: non-overlapped subcarriers keep the uniform share, overlapped
/// ones carry the residual.
double rate_with_reductions(const AllocationResult& alloc, int k,
                            const std::vector<PrimaryEnvironment>& primaries,
                            const SubbandQualityMatrix& e, const RateModel& rm,
                            const BandPlan& plan);

} // namespace uwb

#endif
