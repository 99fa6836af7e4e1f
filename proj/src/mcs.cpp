#include "uwb/mcs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace uwb {

const std::array<McsMode, 8>& mcs_table() {
    static const std::array<McsMode, 8> table = {{
        {53.3, Modulation::QPSK, 1, 3, true, 2, 100, 1.49},
        {80.0, Modulation::QPSK, 1, 2, true, 2, 100, 1.57},
        {110.0, Modulation::QPSK, 11, 32, false, 2, 200, 1.42},
        {160.0, Modulation::QPSK, 1, 2, false, 2, 200, 1.57},
        {200.0, Modulation::QPSK, 5, 8, false, 2, 200, 1.82},
        {320.0, Modulation::DCM, 1, 2, false, 1, 200, 1.85},
        {400.0, Modulation::DCM, 5, 8, false, 1, 200, 1.82},
        {480.0, Modulation::DCM, 3, 4, false, 1, 200, 1.80},
    }};
    return table;
}

double mcs_rate_min() { return mcs_table().front().rate_mbps; }
double mcs_rate_max() { return mcs_table().back().rate_mbps; }

const McsMode& mode_for_rate(double rate_mbps) {
    for (const auto& m : mcs_table()) {
        if (std::abs(m.rate_mbps - rate_mbps) <= 1e-6 * m.rate_mbps) {
            return m;
        }
    }
    throw UnknownModeError("UnknownMode: " + std::to_string(rate_mbps) +
                           " Mbps is not a WiMedia rate");
}

std::string mcs_table_csv() {
    std::ostringstream os;
    os << "rate_mbps,modulation,code_rate,fds,tds,bits_per_symbol,lambda\n";
    for (const auto& m : mcs_table()) {
        os << m.rate_mbps << ','
           << (m.modulation == Modulation::QPSK ? "QPSK" : "DCM") << ','
           << m.code_rate_num << '/' << m.code_rate_den << ','
           << (m.fds ? 1 : 0) << ',' << m.tds_factor << ','
           << m.bits_per_symbol << ',' << m.lambda << '\n';
    }
    return os.str();
}

double effective_sinr(std::span<const double> sinrs, double lambda) {
    return effective_sinr(
        Eigen::Map<const Eigen::ArrayXd>(sinrs.data(),
                                         static_cast<Eigen::Index>(sinrs.size())),
        lambda);
}

double effective_sinr(const Eigen::Ref<const Eigen::ArrayXd>& sinrs, double lambda) {
    if (sinrs.size() == 0) {
        throw InvalidArgument("EmptyInput: effective_sinr needs at least one SINR");
    }
    if (!(lambda > 0.0)) {
        throw InvalidArgument("NonPositiveLambda: lambda must be > 0");
    }
    if ((sinrs < 0.0).any() || !sinrs.allFinite()) {
        throw InvalidArgument("effective_sinr: SINRs must be finite and >= 0");
    }
    // exp(-s/lambda) peaks at the smallest SINR; factoring it out keeps the
    // sum >= 1 so huge SINRs cannot underflow everything to zero.
    const double lo = sinrs.minCoeff();
    const double mean = ((lo - sinrs) / lambda).exp().mean();
    return lo - lambda * std::log(mean);
}

SubbandQualityMatrix::SubbandQualityMatrix(Eigen::MatrixXd e) : e_(std::move(e)) {
    if (e_.rows() < 1 || e_.cols() < 1) {
        throw InvalidArgument("SubbandQualityMatrix: empty matrix");
    }
    if (!e_.allFinite() || (e_.array() <= 0.0).any()) {
        throw InvalidArgument(
            "SubbandQualityMatrix: entries must be strictly positive and finite");
    }
}

} // namespace uwb
