#ifndef UWB_MAC_PROFILE_HPP
#define UWB_MAC_PROFILE_HPP

#include <string>
#include <vector>

#include "uwb/errors.hpp"

namespace uwb {

enum class QosClass { HQoS, SQoS };

inline int class_weight(QosClass c) { return c == QosClass::HQoS ? 2 : 1; }

/// Service weight in [1, 2]: affine in the requested rate over the WiMedia
/// rate span [53.3, 480] Mbps. Throws InvalidArgument outside that range.
double service_weight(double rate_mbps);

/// Absolute weight W = q * s, with q = 2 for HQoS and 1 for SQoS.
double absolute_weight(QosClass qos, double service_weight);

/// One secondary user: QoS class, requested rate, and the derived weights.
struct UserProfile {
    int id = 0;
    QosClass qos_class = QosClass::SQoS;
    double requested_rate_mbps = 0.0;
    double delay_tolerance_ms = 0.0;
    double pathloss_db = 0.0; // link budget scalar for this user
    double s_k = 0.0;         // service weight, [1, 2]
    double w_k = 0.0;         // absolute weight, [1, 4]

    UserProfile() = default;
    UserProfile(int id, QosClass qos, double rate_mbps, double delay_ms,
                double pathloss_db = 0.0);

    bool is_hqos() const { return qos_class == QosClass::HQoS; }
};

/// Total priority order: descending W_k, ties by ascending delay tolerance,
/// remaining ties by ascending id. Returns indices into `users`.
std::vector<int> priority_order(const std::vector<UserProfile>& users);

/// true if users[a] outranks users[b] under the priority order.
bool higher_priority(const UserProfile& a, const UserProfile& b);

std::string to_string(QosClass c);
QosClass qos_class_from_string(const std::string& s);

} // namespace uwb

#endif
