// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_RANDOM_HPP
#define SWIPT_RANDOM_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace swipt {

// Independent random streams. A generator is a pure function of
// (seed, slot, stream), so adding a stream never shifts another one.
enum class Stream : std::uint32_t {
    channel = 1,
    symbols = 2,
    ia_init = 3,
    pa_restarts = 4,
    calibration = 5,
};

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t slot, Stream stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(slot),
                      static_cast<std::uint32_t>(slot >> 32),
                      static_cast<std::uint32_t>(stream)};
    return Rng(seq);
}

// Circularly-symmetric complex Gaussian with E|z|^2 = variance: real and
// imaginary parts are independent N(0, variance / 2).
class ComplexGaussian {
public:
    explicit ComplexGaussian(double variance) : normal_(0.0, std::sqrt(variance / 2.0)) {}

    std::complex<double> operator()(Rng& rng)
    {
        const double re = normal_(rng);
        const double im = normal_(rng);
        return {re, im};
    }

private:
    std::normal_distribution<double> normal_;
};

}  // namespace swipt

#endif  // SWIPT_RANDOM_HPP
