#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace plsec {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace detail

/// Per-trial random stream keyed by (master seed, trial index). Substreams
/// are independent of evaluation order, so serial and parallel runs of the
/// same plan produce bit-identical results.
class TrialRng {
  public:
    TrialRng(std::uint64_t master_seed, std::uint64_t trial_index) {
        std::uint64_t key = master_seed ^ (0xd1342543de82ef95ULL * (trial_index + 1));
        for (auto& w : s_) w = detail::splitmix64(key);
    }

    std::uint64_t next_u64() {
        // xoshiro256++
        const std::uint64_t result = detail::rotl64(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl64(s_[3], 45);
        return result;
    }

    /// Uniform draw on (0, 1].
    double uniform_pos() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Circularly symmetric complex Gaussian CN(0, variance), one Box-Muller
    /// pair per draw (real/imag each N(0, variance/2)).
    std::complex<double> cgauss(double variance) {
        const double u1 = uniform_pos();
        const double u2 = uniform_pos();
        const double r = std::sqrt(-variance * std::log(u1));
        const double phi = 6.28318530717958647692528676655900577 * u2;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

  private:
    std::uint64_t s_[4];
};

}  // namespace plsec
