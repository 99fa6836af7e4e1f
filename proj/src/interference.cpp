#include "uwb/interference.hpp"

#include <cmath>

namespace uwb {

namespace {

// Unit-normalized subcarrier PSD, frequency in MHz, T_s in us.
double pulse_psd(double f_mhz, double ts_us) {
    const double x = f_mhz * ts_us;
    if (std::abs(x) < 1e-8) {
        return ts_us; // sinc(0) = 1
    }
    const double s = std::sin(M_PI * x) / (M_PI * x);
    return ts_us * s * s;
}

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(double a, double b, double fa, double fm, double fb, double whole,
             double tol, double ts_us, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = pulse_psd(lm, ts_us);
    const double frm = pulse_psd(rm, ts_us);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adapt(a, m, fa, flm, fm, left, tol / 2.0, ts_us, depth - 1) +
           adapt(m, b, fm, frm, fb, right, tol / 2.0, ts_us, depth - 1);
}

double integrate_psd(double a, double b, double ts_us, double tol) {
    if (b <= a) return 0.0;
    // Pre-split into ~quarter-period chunks; sinc^2 oscillates with period
    // 1/T_s and plain adaptive Simpson stalls on wide oscillatory spans.
    const double period = 1.0 / ts_us;
    const int chunks = std::max(1, static_cast<int>(std::ceil((b - a) / (period / 4.0))));
    const double h = (b - a) / chunks;
    double total = 0.0;
    for (int c = 0; c < chunks; ++c) {
        const double x0 = a + c * h;
        const double x1 = (c + 1 == chunks) ? b : x0 + h;
        const double xm = 0.5 * (x0 + x1);
        const double f0 = pulse_psd(x0, ts_us);
        const double fm = pulse_psd(xm, ts_us);
        const double f1 = pulse_psd(x1, ts_us);
        const double whole = simpson(x0, x1, f0, fm, f1);
        total += adapt(x0, x1, f0, fm, f1, whole, tol / chunks, ts_us, 40);
    }
    return total;
}

constexpr double kGuardPeriods = 10.0; // guard distance in units of 1/T_s

} // namespace

PrimaryUserBand make_primary(double center_ghz, double bandwidth_mhz,
                             const BandPlan& plan, double i_th) {
    if (bandwidth_mhz < 0.0) {
        throw ConfigError("primary bandwidth must be >= 0");
    }
    PrimaryUserBand p;
    p.center_ghz = center_ghz;
    p.bandwidth_mhz = bandwidth_mhz;
    p.i_th = i_th;
    const double fc = center_ghz * 1e3;
    const double half_band = plan.band_width_mhz() / 2.0;
    for (int b = 0; b < plan.bands(); ++b) {
        const double c = plan.centers_ghz[b] * 1e3;
        if (fc >= c - half_band && fc < c + half_band) {
            p.overlapped_band = b;
            break;
        }
    }
    if (p.overlapped_band < 0) {
        throw ConfigError("primary user at " + std::to_string(center_ghz) +
                          " GHz lies outside every sub-band");
    }
    // Subcarriers of the overlapped band whose centers fall inside the
    // licensed band.
    p.n_ud = plan.n_subcarriers;
    p.n_up = -1;
    for (int i = 0; i < plan.n_subcarriers; ++i) {
        const double f = plan.subcarrier_freq_mhz(p.overlapped_band, i);
        if (std::abs(f - fc) <= bandwidth_mhz / 2.0) {
            p.n_ud = std::min(p.n_ud, i);
            p.n_up = std::max(p.n_up, i);
        }
    }
    if (p.n_up < p.n_ud) {
        p.n_ud = 0;
        p.n_up = -1;
    }
    return p;
}

double overlap_factor_at_distance(double distance_mhz, double bandwidth_mhz,
                                  double symbol_duration_us) {
    if (!(symbol_duration_us > 0.0)) {
        throw InvalidArgument("symbol duration must be > 0");
    }
    if (bandwidth_mhz <= 0.0) return 0.0;
    const double lo = distance_mhz - bandwidth_mhz / 2.0;
    const double hi = distance_mhz + bandwidth_mhz / 2.0;
    return integrate_psd(lo, hi, symbol_duration_us, 1e-9);
}

double subcarrier_overlap_factor(int band, int i, const PrimaryUserBand& primary,
                                 const BandPlan& plan) {
    const double d =
        plan.subcarrier_freq_mhz(band, i) - primary.center_ghz * 1e3;
    return overlap_factor_at_distance(d, primary.bandwidth_mhz,
                                      plan.symbol_duration_us());
}

double band_interference_factor(int band, const PrimaryUserBand& primary,
                                const BandPlan& plan) {
    if (primary.bandwidth_mhz <= 0.0) return 0.0;
    const double fc = primary.center_ghz * 1e3;
    const double c = plan.centers_ghz.at(band) * 1e3;
    const double half_band = plan.band_width_mhz() / 2.0;
    const double guard = kGuardPeriods / plan.symbol_duration_us();
    const double gap = std::abs(fc - c) - half_band - primary.bandwidth_mhz / 2.0;
    if (gap > guard) return 0.0;
    double sum = 0.0;
    for (int i = 0; i < plan.n_subcarriers; ++i) {
        sum += subcarrier_overlap_factor(band, i, primary, plan);
    }
    return sum;
}

OverlapFactors compute_overlap_factors(const PrimaryUserBand& primary,
                                       const BandPlan& plan) {
    OverlapFactors f;
    f.per_subcarrier = Eigen::ArrayXd::Zero(plan.n_subcarriers);
    for (int i = 0; i < plan.n_subcarriers; ++i) {
        f.per_subcarrier[i] =
            subcarrier_overlap_factor(primary.overlapped_band, i, primary, plan);
    }
    f.per_band = Eigen::ArrayXd::Zero(plan.bands());
    for (int b = 0; b < plan.bands(); ++b) {
        if (b == primary.overlapped_band) {
            f.per_band[b] = f.per_subcarrier.sum();
        } else {
            f.per_band[b] = band_interference_factor(b, primary, plan);
        }
    }
    return f;
}

} // namespace uwb
