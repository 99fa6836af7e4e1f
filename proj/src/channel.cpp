#include "uwb/channel.hpp"

#include <cmath>
#include <complex>

#include "uwb/rng.hpp"

namespace uwb {

void CmProfile::validate() const {
    if (!(cluster_arrival_rate > 0.0) || !(ray_arrival_rate >= 0.0) ||
        !(cluster_decay > 0.0) || !(ray_decay > 0.0) || !(max_delay_ns > 0.0) ||
        cluster_fading_std_db < 0.0 || ray_fading_std_db < 0.0 ||
        shadowing_std_db < 0.0) {
        throw ConfigError("channel profile '" + name + "' has non-positive rates or decays");
    }
}

CmProfile cm_profile(const std::string& name) {
    CmProfile p;
    p.name = name;
    if (name == "CM1") {
        p.cluster_arrival_rate = 0.0233;
        p.ray_arrival_rate = 2.5;
        p.cluster_decay = 7.1;
        p.ray_decay = 4.3;
        p.max_delay_ns = 80.0;
    } else if (name == "CM2") {
        p.cluster_arrival_rate = 0.4;
        p.ray_arrival_rate = 0.5;
        p.cluster_decay = 5.5;
        p.ray_decay = 6.7;
        p.max_delay_ns = 80.0;
    } else if (name == "CM3") {
        p.cluster_arrival_rate = 0.0667;
        p.ray_arrival_rate = 2.1;
        p.cluster_decay = 14.0;
        p.ray_decay = 7.9;
        p.max_delay_ns = 150.0;
    } else if (name == "CM4") {
        p.cluster_arrival_rate = 0.0667;
        p.ray_arrival_rate = 2.1;
        p.cluster_decay = 24.0;
        p.ray_decay = 12.0;
        p.max_delay_ns = 250.0;
    } else {
        throw ConfigError("unknown channel model '" + name + "' (expected CM1..CM4)");
    }
    return p;
}

double ChannelRealization::total_tap_energy() const {
    double e = 0.0;
    for (const auto& t : taps) e += t.gain * t.gain;
    return e;
}

double ChannelRealization::rms_delay_spread_ns() const {
    double e = 0.0, m1 = 0.0, m2 = 0.0;
    for (const auto& t : taps) {
        const double p = t.gain * t.gain;
        e += p;
        m1 += p * t.delay_ns;
        m2 += p * t.delay_ns * t.delay_ns;
    }
    if (e <= 0.0) return 0.0;
    const double mean = m1 / e;
    return std::sqrt(std::max(0.0, m2 / e - mean * mean));
}

ChannelRealization generate_channel(const CmProfile& profile, std::uint64_t seed) {
    profile.validate();
    Rng rng(seed);
    ChannelRealization ch;
    ch.seed = seed;

    const double sigma_db =
        std::sqrt(profile.cluster_fading_std_db * profile.cluster_fading_std_db +
                  profile.ray_fading_std_db * profile.ray_fading_std_db);
    const double ln10 = std::log(10.0);

    double cluster_t = 0.0; // first cluster arrives at t = 0
    int z = 0;
    while (cluster_t <= profile.max_delay_ns) {
        double ray_t = 0.0; // first ray of each cluster at the cluster arrival
        int p = 0;
        while (cluster_t + ray_t <= profile.max_delay_ns) {
            // Double-exponential mean power decay; the log-normal fading mean
            // is offset so E[gain^2] equals the decay profile.
            const double omega_db = (-10.0 * cluster_t / profile.cluster_decay -
                                     10.0 * ray_t / profile.ray_decay) / ln10;
            const double mu_db = omega_db - sigma_db * sigma_db * ln10 / 20.0;
            const double fading_db = mu_db + sigma_db * rng.normal();
            const double amp = std::pow(10.0, fading_db / 20.0);
            Tap tap;
            tap.cluster = z;
            tap.ray = p;
            tap.delay_ns = cluster_t + ray_t;
            tap.gain = rng.sign() * amp;
            ch.taps.push_back(tap);
            ++p;
            if (profile.ray_arrival_rate <= 0.0) break; // one ray per cluster
            ray_t += rng.exponential(profile.ray_arrival_rate);
        }
        ++z;
        cluster_t += rng.exponential(profile.cluster_arrival_rate);
    }

    // Unit total multipath energy per realization.
    double energy = ch.total_tap_energy();
    if (energy > 0.0) {
        const double scale = 1.0 / std::sqrt(energy);
        for (auto& t : ch.taps) t.gain *= scale;
    }

    // Log-normal shadowing as a power gain: 10 log10(G) ~ N(0, sigma_x).
    ch.shadowing_gain =
        std::pow(10.0, profile.shadowing_std_db * rng.normal() / 10.0);
    return ch;
}

Eigen::VectorXcd frequency_response(const ChannelRealization& ch,
                                    double band_center_ghz, int n_subcarriers,
                                    double spacing_mhz) {
    // Bin taps onto the sample grid (1 / band width) so that the discrete
    // transform satisfies Parseval exactly for on-grid taps.
    const double sample_ns = 1e3 / (n_subcarriers * spacing_mhz);
    std::vector<double> bins;
    for (const auto& t : ch.taps) {
        const auto idx = static_cast<std::size_t>(
            std::llround(std::max(0.0, t.delay_ns) / sample_ns));
        if (idx >= bins.size()) bins.resize(idx + 1, 0.0);
        bins[idx] += t.gain;
    }
    std::vector<std::pair<double, double>> binned; // (delay_ns, amplitude)
    binned.reserve(bins.size());
    for (std::size_t n = 0; n < bins.size(); ++n) {
        if (bins[n] != 0.0) binned.emplace_back(n * sample_ns, bins[n]);
    }

    const double sqrt_g = std::sqrt(ch.shadowing_gain);
    Eigen::VectorXcd h(n_subcarriers);
    for (int i = 0; i < n_subcarriers; ++i) {
        const double f_mhz =
            band_center_ghz * 1e3 + (i - n_subcarriers / 2) * spacing_mhz;
        std::complex<double> acc(0.0, 0.0);
        for (const auto& [delay_ns, amp] : binned) {
            const double phase = -2.0 * M_PI * f_mhz * 1e-3 * delay_ns; // GHz * ns
            acc += amp * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        h[i] = sqrt_g * acc;
    }
    return h;
}

void LinkBudget::validate() const {
    if (tx_psd_dbm_mhz > -41.3 + 1e-9) {
        throw ConfigError("tx PSD exceeds the -41.3 dBm/MHz cap");
    }
}

Eigen::ArrayXd per_subcarrier_sinr(const Eigen::VectorXcd& gains,
                                   const LinkBudget& budget,
                                   const std::set<int>& overlapped,
                                   double spacing_mhz) {
    const double pathloss = db_to_linear(-budget.distance_pathloss_db);
    const double noise_w = dbm_to_watt(budget.noise_psd_dbm_mhz) * spacing_mhz;
    const double j_w = budget.primary_interference_enabled
                           ? dbm_to_watt(budget.primary_interference_psd_dbm_mhz) *
                                 spacing_mhz
                           : 0.0;
    Eigen::ArrayXd sinr(gains.size());
    for (Eigen::Index i = 0; i < gains.size(); ++i) {
        const double j =
            overlapped.count(static_cast<int>(i)) > 0 ? j_w : 0.0;
        const double denom = noise_w + j;
        if (denom <= 0.0) {
            throw InvalidArgument("ZeroNoise: subcarrier " + std::to_string(i) +
                                  " has zero noise and interference");
        }
        sinr[i] = std::norm(gains[i]) * pathloss / denom;
    }
    return sinr;
}

} // namespace uwb
