#pragma once
// Counter-based random streams (Philox4x64, 10 rounds). A (seed, stream id,
// counter) triple fully determines every draw, so chunked Monte Carlo work
// can be farmed out to any number of workers and still reproduce bit-exactly.

#include <complex>
#include <cstdint>

namespace noma {

class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
        : key_{seed, stream_id} {}

    std::uint64_t next_u64() noexcept;

    /// Uniform double in [0, 1), 53 random bits.
    double next_double() noexcept;

    /// Exponential variate with the given rate (inversion method).
    double next_exponential(double rate) noexcept;

    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    std::complex<double> next_complex_gaussian(double variance) noexcept;

    bool next_bernoulli(double p) noexcept { return next_double() < p; }

    std::uint64_t seed() const noexcept { return key_[0]; }
    std::uint64_t stream_id() const noexcept { return key_[1]; }

    // UniformRandomBitGenerator interface
    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() noexcept { return next_u64(); }

private:
    void refill() noexcept;

    std::uint64_t key_[2];
    std::uint64_t counter_[4] = {0, 0, 0, 0};
    std::uint64_t buffer_[4] = {0, 0, 0, 0};
    int buffer_pos_ = 4;
};

}  // namespace noma
