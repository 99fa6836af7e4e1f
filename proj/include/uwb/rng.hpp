#ifndef UWB_RNG_HPP
#define UWB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace uwb {

// Deterministic random streams. Distribution sampling is hand-rolled on top
// of the raw mt19937_64 output because std::uniform_real_distribution and
// friends are implementation-defined; results here are identical across
// standard libraries for a given seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (0, 1]; safe as a log() argument.
    double uniform_pos() { return 1.0 - uniform(); }

    /// Standard normal via Box-Muller. Consumes two uniforms per pair.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * M_PI * u2;
        spare_ = r * std::sin(th);
        have_spare_ = true;
        return r * std::cos(th);
    }

    /// Exponential with the given rate (mean 1/rate).
    double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

    /// +1 or -1, equiprobable.
    double sign() { return (gen_() & 1u) ? 1.0 : -1.0; }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// splitmix64 mix; used to derive independent per-(trial, user) seeds from a
/// base seed without correlated streams.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix_seed(mix_seed(a, b), c);
}

} // namespace uwb

#endif
