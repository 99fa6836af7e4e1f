#ifndef UWB_INTERFERENCE_HPP
#define UWB_INTERFERENCE_HPP

#include <Eigen/Core>
#include <vector>

#include "uwb/band_plan.hpp"

namespace uwb {

/// A licensed narrowband user overlapping the UWB spectrum.
struct PrimaryUserBand {
    double center_ghz = 0.0;
    double bandwidth_mhz = 0.0; // width of the licensed band
    double i_th = 0.0;          // interference threshold, same unit as power
    int overlapped_band = -1;   // sub-band index the center falls inside
    int n_ud = 0;               // first overlapped subcarrier index
    int n_up = -1;              // last overlapped subcarrier index (inclusive)

    /// Number of subcarriers whose centers fall inside the licensed band.
    int overlapped_count() const { return n_up >= n_ud ? n_up - n_ud + 1 : 0; }
};

/// Locates the licensed band on the sub-band/subcarrier grid. Throws
/// ConfigError if the center lies outside every sub-band of the plan.
PrimaryUserBand make_primary(double center_ghz, double bandwidth_mhz,
                             const BandPlan& plan, double i_th = 0.0);

/// Fraction of a unit-power subcarrier PSD landing inside a band of width
/// `bandwidth_mhz` centered `distance_mhz` away from the subcarrier. The
/// PSD is the unit-normalized OFDM pulse shape T_s * sinc^2(f * T_s).
/// Integrated by adaptive Simpson to 1e-9 absolute.
double overlap_factor_at_distance(double distance_mhz, double bandwidth_mhz,
                                  double symbol_duration_us);

/// Overlap factor of subcarrier `i` of sub-band `band` with the primary band.
double subcarrier_overlap_factor(int band, int i, const PrimaryUserBand& primary,
                                 const BandPlan& plan);

/// Per-band interference factor: sum of the band's per-subcarrier overlap
/// factors. Exactly zero when the primary band lies beyond a guard distance
/// (10 / T_s) outside the sub-band.
double band_interference_factor(int band, const PrimaryUserBand& primary,
                                const BandPlan& plan);

/// Interference power caused by a transmission of power P on a band with
/// interference factor I_b: the plain product, in the units of P.
inline double interference_power(double p, double i_b) { return p * i_b; }

/// Precomputed overlap factors for one (primary, plan) pair: the overlapped
/// band's per-subcarrier factors plus the per-band sums.
struct OverlapFactors {
    Eigen::ArrayXd per_subcarrier; // of primary.overlapped_band, size 128
    Eigen::ArrayXd per_band;       // size plan.bands()
};

OverlapFactors compute_overlap_factors(const PrimaryUserBand& primary,
                                       const BandPlan& plan);

} // namespace uwb

#endif
