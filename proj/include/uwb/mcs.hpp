#ifndef UWB_MCS_HPP
#define UWB_MCS_HPP

#include <Eigen/Core>
#include <array>
#include <span>
#include <string>

#include "uwb/errors.hpp"

namespace uwb {

enum class Modulation { QPSK, DCM };

/// One WiMedia PHY mode: data rate, modulation/coding, spreading, and the
/// EESM scaling factor used to compress per-subcarrier SINRs.
struct McsMode {
    double rate_mbps;
    Modulation modulation;
    int code_rate_num;
    int code_rate_den;
    bool fds;            // frequency-domain spreading
    int tds_factor;      // time-domain spreading factor
    int bits_per_symbol; // coded bits per OFDM symbol
    double lambda;       // EESM scale, linear SINR domain

    double code_rate() const {
        return static_cast<double>(code_rate_num) / code_rate_den;
    }
};

/// The eight WiMedia data rate modes, ascending in rate.
const std::array<McsMode, 8>& mcs_table();

/// Lowest / highest rates of the table (53.3 / 480 Mbps).
double mcs_rate_min();
double mcs_rate_max();

/// Look up the mode with the given rate. Throws UnknownModeError if the rate
/// is not one of the eight table rows (matching tolerance 1e-6 relative).
const McsMode& mode_for_rate(double rate_mbps);

/// CSV dump of the table, header included. Columns:
/// rate_mbps, modulation, code_rate, fds, tds, bits_per_symbol, lambda
std::string mcs_table_csv();

/// Exponential effective SINR mapping: compresses a vector of linear-domain
/// subcarrier SINRs into one effective SINR,
///   -lambda * ln( mean( exp(-sinr_i / lambda) ) ).
/// The result always lies in [min(sinrs), max(sinrs)]. Inputs must be
/// non-negative; lambda must be > 0. Computed with a max-shift so that large
/// SINRs cannot underflow the sum to zero.
double effective_sinr(std::span<const double> sinrs, double lambda);
double effective_sinr(const Eigen::Ref<const Eigen::ArrayXd>& sinrs, double lambda);

/// K x B matrix of effective SINR per unit transmit power (1/W), so that
/// P * e(k, b) is the operating SINR of user k on sub-band b. Entries are
/// validated to be strictly positive and finite.
class SubbandQualityMatrix {
  public:
    SubbandQualityMatrix(Eigen::MatrixXd e);

    const Eigen::MatrixXd& e() const { return e_; }
    Eigen::Index users() const { return e_.rows(); }
    Eigen::Index bands() const { return e_.cols(); }
    double operator()(Eigen::Index k, Eigen::Index b) const { return e_(k, b); }

  private:
    Eigen::MatrixXd e_;
};

} // namespace uwb

#endif
