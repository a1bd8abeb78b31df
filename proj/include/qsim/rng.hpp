#ifndef QSIM_RNG_HPP
#define QSIM_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>

namespace qsim {

// SplitMix64 (Steele, Lea & Flood 2014).  Chosen because the whole output
// stream is a pure function of (seed, draw index), so results are
// bit-reproducible across platforms and compilers; the standard library
// distributions carry no such guarantee.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1): top 53 bits scaled by 2^-53.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform double in (0, 1]; safe as a logarithm argument.
    double next_unit_open() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit_open();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    // Standard complex normal: independent N(0,1) real and imaginary parts.
    std::complex<double> next_complex_gaussian() {
        const double re = next_gaussian();
        const double im = next_gaussian();
        return {re, im};
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

namespace detail {
// SplitMix64 finalizer, used as a stateless 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
}  // namespace detail

// Independent generator for stream `index` under a master `seed`.  Trials
// seeded this way can run in any order (or in parallel) and still
// reproduce the serial results exactly.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(detail::mix64(detail::mix64(seed) ^ detail::mix64(index + 1)));
}

}  // namespace qsim

#endif  // QSIM_RNG_HPP
