#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uwb/mac_profile.hpp"

using namespace uwb;

TEST_CASE("service weight endpoints and interior") {
    CHECK(service_weight(53.3) == doctest::Approx(1.0));
    CHECK(service_weight(480.0) == doctest::Approx(2.0));
    // 1 + 106.7 / 426.7 at full precision
    CHECK(service_weight(160.0) ==
          doctest::Approx(1.2500585891727209).epsilon(1e-14));
    CHECK_THROWS_AS(service_weight(40.0), InvalidArgument);
    CHECK_THROWS_AS(service_weight(500.0), InvalidArgument);
}

TEST_CASE("absolute weight combines class and service weights") {
    CHECK(absolute_weight(QosClass::HQoS, 2.0) == doctest::Approx(4.0));
    CHECK(absolute_weight(QosClass::SQoS, 1.0) == doctest::Approx(1.0));
    CHECK(absolute_weight(QosClass::HQoS, 1.25) == doctest::Approx(2.5));
}

TEST_CASE("profile construction derives both weights") {
    const UserProfile hq(1, QosClass::HQoS, 320.0, 5.0);
    CHECK(hq.s_k == doctest::Approx(1.0 + (320.0 - 53.3) / (480.0 - 53.3)));
    CHECK(hq.w_k == doctest::Approx(2.0 * hq.s_k));
    CHECK(hq.w_k >= 2.0);
    CHECK(hq.w_k <= 4.0);

    const UserProfile sq(2, QosClass::SQoS, 53.3, 100.0);
    CHECK(sq.w_k == doctest::Approx(1.0));

    // Same requested rate: every HQoS user outranks every SQoS user.
    const UserProfile sq2(3, QosClass::SQoS, 320.0, 5.0);
    CHECK(sq2.w_k >= 1.0);
    CHECK(sq2.w_k <= 2.0);
    CHECK(higher_priority(hq, sq2));
}

TEST_CASE("priority order: weight desc, delay asc, id asc") {
    std::vector<UserProfile> users;
    users.emplace_back(1, QosClass::SQoS, 53.3, 50.0);  // W = 1
    users.emplace_back(2, QosClass::HQoS, 480.0, 10.0); // W = 4
    users.emplace_back(3, QosClass::HQoS, 480.0, 5.0);  // W = 4, lower delay
    users.emplace_back(4, QosClass::HQoS, 480.0, 5.0);  // tie -> lower id first

    const auto order = priority_order(users);
    CHECK(order == std::vector<int>{2, 3, 1, 0});

    // Re-sorting an already ordered list is a no-op (total order).
    std::vector<UserProfile> sorted;
    for (int i : order) sorted.push_back(users[i]);
    const auto order2 = priority_order(sorted);
    CHECK(order2 == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("two-user example: heavier class weight wins") {
    std::vector<UserProfile> users;
    users.emplace_back(1, QosClass::SQoS, 53.3, 1.0); // W = 1, tiny delay
    users.emplace_back(2, QosClass::HQoS, 480.0, 99.0); // W = 4
    const auto order = priority_order(users);
    CHECK(order.front() == 1);
}
