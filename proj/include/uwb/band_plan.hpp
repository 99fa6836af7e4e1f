#ifndef UWB_BAND_PLAN_HPP
#define UWB_BAND_PLAN_HPP

#include <vector>

#include "uwb/errors.hpp"

namespace uwb {

/// MB-OFDM sub-band layout. Defaults to the first WiMedia channel:
/// three 528 MHz bands at 3.432 / 3.960 / 4.488 GHz, 128 subcarriers each.
struct BandPlan {
    std::vector<double> centers_ghz{3.432, 3.960, 4.488};
    int n_subcarriers = 128;
    double spacing_mhz = 528.0 / 128.0; // 4.125 MHz
    int n_data_subcarriers = 100;

    int bands() const { return static_cast<int>(centers_ghz.size()); }
    double band_width_mhz() const { return n_subcarriers * spacing_mhz; }

    /// OFDM data-symbol duration in microseconds (1 / subcarrier spacing).
    double symbol_duration_us() const { return 1.0 / spacing_mhz; }

    /// Absolute frequency of subcarrier i of band b, in MHz.
    double subcarrier_freq_mhz(int band, int i) const {
        return centers_ghz.at(band) * 1e3 +
               (i - n_subcarriers / 2) * spacing_mhz;
    }

    /// Effective data bandwidth of one sub-band in MHz (100 of 128 carriers).
    double data_bandwidth_mhz() const {
        return static_cast<double>(n_data_subcarriers) * spacing_mhz;
    }
};

} // namespace uwb

#endif
