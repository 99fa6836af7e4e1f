#include "uwb/mac_profile.hpp"

#include <algorithm>
#include <numeric>

#include "uwb/mcs.hpp"

namespace uwb {

double service_weight(double rate_mbps) {
    const double lo = mcs_rate_min();
    const double hi = mcs_rate_max();
    if (rate_mbps < lo - 1e-9 || rate_mbps > hi + 1e-9) {
        throw InvalidArgument("RateOutOfTable: rate " + std::to_string(rate_mbps) +
                              " Mbps outside [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
    }
    return 1.0 + (rate_mbps - lo) / (hi - lo);
}

double absolute_weight(QosClass qos, double s) {
    return class_weight(qos) * s;
}

UserProfile::UserProfile(int id_, QosClass qos, double rate_mbps, double delay_ms,
                         double pathloss)
    : id(id_), qos_class(qos), requested_rate_mbps(rate_mbps),
      delay_tolerance_ms(delay_ms), pathloss_db(pathloss) {
    s_k = service_weight(rate_mbps);
    w_k = absolute_weight(qos, s_k);
}

bool higher_priority(const UserProfile& a, const UserProfile& b) {
    if (a.w_k != b.w_k) return a.w_k > b.w_k;
    if (a.delay_tolerance_ms != b.delay_tolerance_ms)
        return a.delay_tolerance_ms < b.delay_tolerance_ms;
    return a.id < b.id;
}

std::vector<int> priority_order(const std::vector<UserProfile>& users) {
    std::vector<int> order(users.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return higher_priority(users[i], users[j]);
    });
    return order;
}

std::string to_string(QosClass c) {
    return c == QosClass::HQoS ? "HQoS" : "SQoS";
}

QosClass qos_class_from_string(const std::string& s) {
    if (s == "HQoS" || s == "hqos" || s == "HQOS") return QosClass::HQoS;
    if (s == "SQoS" || s == "sqos" || s == "SQOS") return QosClass::SQoS;
    throw ConfigError("unknown QoS class '" + s + "' (expected HQoS or SQoS)");
}

} // namespace uwb
