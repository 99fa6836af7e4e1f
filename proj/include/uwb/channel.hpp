#ifndef UWB_CHANNEL_HPP
#define UWB_CHANNEL_HPP

#include <Eigen/Core>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "uwb/band_plan.hpp"
#include "uwb/errors.hpp"

namespace uwb {

/// Clustered-multipath profile parameters (IEEE 802.15.3a convention).
/// Rates in 1/ns, decays in ns, fading/shadowing stds in dB.
struct CmProfile {
    std::string name = "CM1";
    double cluster_arrival_rate = 0.0233;
    double ray_arrival_rate = 2.5;
    double cluster_decay = 7.1;
    double ray_decay = 4.3;
    double cluster_fading_std_db = 3.3941;
    double ray_fading_std_db = 3.3941;
    double shadowing_std_db = 3.0;
    double max_delay_ns = 80.0;

    void validate() const;
};

/// Built-in CM1..CM4 profiles. Throws ConfigError for other names.
CmProfile cm_profile(const std::string& name);

struct Tap {
    int cluster = 0;
    int ray = 0;
    double delay_ns = 0.0;
    double gain = 0.0; // linear amplitude, signed
};

/// One channel draw: signed multipath taps normalized to unit total energy,
/// plus a log-normal shadowing power gain applied on top.
struct ChannelRealization {
    double shadowing_gain = 1.0; // linear power gain G
    std::vector<Tap> taps;
    std::uint64_t seed = 0;

    double total_tap_energy() const;
    double rms_delay_spread_ns() const;
};

/// Draws a realization: Poisson cluster/ray arrivals, exponential mean power
/// decay, log-normal per-tap fading with equiprobable sign, unit-energy
/// normalization, log-normal shadowing. Deterministic for a fixed seed.
ChannelRealization generate_channel(const CmProfile& profile, std::uint64_t seed);

/// Complex channel gains at the subcarrier frequencies of one band:
/// H_i = sqrt(G) * sum_taps gain * exp(-j 2 pi f_i tau), with taps first
/// binned onto the 1/528 MHz sample grid.
Eigen::VectorXcd frequency_response(const ChannelRealization& ch,
                                    double band_center_ghz,
                                    int n_subcarriers = 128,
                                    double spacing_mhz = 528.0 / 128.0);

/// Receiver-side budget. PSDs in dBm/MHz; pathloss in dB.
struct LinkBudget {
    double tx_psd_dbm_mhz = -41.3;
    double noise_psd_dbm_mhz = -107.4;
    double distance_pathloss_db = 50.0;
    double primary_interference_psd_dbm_mhz = 0.0; // 0 disables
    bool primary_interference_enabled = false;

    void validate() const;
};

/// Per-subcarrier SINR per unit transmit power (1/W):
///   e_i = |H_i|^2 * pathloss / (N0 * df_sc + J_i)
/// where J_i is the primary-user interference power on subcarrier i when
/// i is in `overlapped` and the budget enables it, else 0. Throws
/// InvalidArgument ("ZeroNoise") when noise and interference are both zero.
Eigen::ArrayXd per_subcarrier_sinr(const Eigen::VectorXcd& gains,
                                   const LinkBudget& budget,
                                   const std::set<int>& overlapped,
                                   double spacing_mhz = 528.0 / 128.0);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

} // namespace uwb

#endif
