#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "uwb/mcs.hpp"

using namespace uwb;

TEST_CASE("mode table holds exactly the eight WiMedia rows") {
    const auto& t = mcs_table();
    REQUIRE(t.size() == 8);
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        CHECK(t[i].rate_mbps < t[i + 1].rate_mbps);
    }
    for (const auto& m : t) {
        CHECK(m.lambda > 1.0);
    }
}

TEST_CASE("mode_for_rate looks up table rows") {
    const auto& low = mode_for_rate(53.3);
    CHECK(low.lambda == doctest::Approx(1.49));
    CHECK(low.modulation == Modulation::QPSK);
    CHECK(low.code_rate_num == 1);
    CHECK(low.code_rate_den == 3);
    CHECK(low.fds);

    const auto& high = mode_for_rate(480);
    CHECK(high.lambda == doctest::Approx(1.80));
    CHECK(high.modulation == Modulation::DCM);
    CHECK(high.code_rate() == doctest::Approx(0.75));

    CHECK_THROWS_AS(mode_for_rate(100.0), UnknownModeError);
}

TEST_CASE("table CSV dump has a header plus eight rows") {
    const std::string csv = mcs_table_csv();
    CHECK(csv.find("rate_mbps,modulation,code_rate,fds,tds,bits_per_symbol,lambda") == 0);
    int lines = 0;
    for (char c : csv) {
        if (c == '\n') ++lines;
    }
    CHECK(lines == 9);
    CHECK(csv.find("53.3,QPSK,1/3,1,2,100,1.49") != std::string::npos);
    CHECK(csv.find("480,DCM,3/4,0,1,200,1.8") != std::string::npos);
}

TEST_CASE("effective SINR of a constant vector is that constant") {
    for (double s : {0.0, 0.3, 5.0, 2000.0}) {
        Eigen::ArrayXd v = Eigen::ArrayXd::Constant(16, s);
        CHECK(effective_sinr(v, 1.49) == doctest::Approx(s).epsilon(1e-12));
    }
    Eigen::ArrayXd single(1);
    single << 7.25;
    CHECK(effective_sinr(single, 3.0) == doctest::Approx(7.25));
}

TEST_CASE("effective SINR matches the frozen high-precision value") {
    Eigen::ArrayXd v(2);
    v << 1.0, 4.0;
    // -1.57 * ln(0.5 (e^{-1/1.57} + e^{-4/1.57})), evaluated at 40 digits.
    CHECK(effective_sinr(v, 1.57) ==
          doctest::Approx(1.8716053179116048).epsilon(1e-14));
}

TEST_CASE("effective SINR rejects bad inputs") {
    Eigen::ArrayXd empty(0);
    CHECK_THROWS_AS(effective_sinr(empty, 1.0), InvalidArgument);
    Eigen::ArrayXd v(2);
    v << 1.0, 2.0;
    CHECK_THROWS_AS(effective_sinr(v, 0.0), InvalidArgument);
    CHECK_THROWS_AS(effective_sinr(v, -1.0), InvalidArgument);
    Eigen::ArrayXd neg(2);
    neg << 1.0, -0.5;
    CHECK_THROWS_AS(effective_sinr(neg, 1.0), InvalidArgument);
}

TEST_CASE("effective SINR properties: bounds, monotonicity, permutation") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> unif(0.0, 40.0);
    std::uniform_real_distribution<double> lam(0.5, 3.0);
    for (int it = 0; it < 500; ++it) {
        const int n = 1 + static_cast<int>(gen() % 32);
        Eigen::ArrayXd v(n);
        for (int i = 0; i < n; ++i) v[i] = unif(gen);
        const double lambda = lam(gen);
        const double eff = effective_sinr(v, lambda);

        CHECK(eff >= v.minCoeff() - 1e-12);
        CHECK(eff <= v.maxCoeff() + 1e-12);

        // Raising one entry never lowers the output.
        Eigen::ArrayXd w = v;
        const int j = static_cast<int>(gen() % n);
        w[j] += 1.0 + unif(gen);
        CHECK(effective_sinr(w, lambda) >= eff - 1e-12);

        // Permutation invariance.
        Eigen::ArrayXd perm = v.reverse();
        CHECK(effective_sinr(perm, lambda) == doctest::Approx(eff).epsilon(1e-13));
    }
}

TEST_CASE("effective SINR tends to the arithmetic mean as lambda grows") {
    // The finite-lambda bias is ~var/(2*lambda); at lambda = 1e6 the 1e-6
    // relative window holds for vectors with var < 2 * mean.
    Eigen::ArrayXd v(5);
    v << 8.0, 9.5, 10.5, 12.0, 14.0;
    const double mean = v.mean();
    const double eff = effective_sinr(v, 1e6);
    CHECK(std::abs(eff - mean) / mean < 1e-6);

    // And the bias shrinks as lambda grows.
    Eigen::ArrayXd w(5);
    w << 0.4, 3.0, 9.5, 14.0, 27.0;
    const double e6 = std::abs(effective_sinr(w, 1e6) - w.mean());
    const double e8 = std::abs(effective_sinr(w, 1e8) - w.mean());
    CHECK(e8 < e6 / 50.0);
}

TEST_CASE("effective SINR survives huge inputs (no underflow to -inf)") {
    Eigen::ArrayXd v(3);
    v << 5000.0, 6000.0, 7000.0;
    const double eff = effective_sinr(v, 1.49);
    CHECK(std::isfinite(eff));
    CHECK(eff >= 5000.0 - 1e-9);
    CHECK(eff <= 7000.0);
}

TEST_CASE("quality matrix validates positivity") {
    Eigen::MatrixXd ok(2, 2);
    ok << 1.0, 2.0, 3.0, 4.0;
    CHECK_NOTHROW(SubbandQualityMatrix{ok});
    Eigen::MatrixXd bad = ok;
    bad(1, 1) = 0.0;
    CHECK_THROWS_AS(SubbandQualityMatrix{bad}, InvalidArgument);
    bad(1, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(SubbandQualityMatrix{bad}, InvalidArgument);
}
