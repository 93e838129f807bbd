#include "noma/rng.hpp"

#include <cmath>

namespace noma {

namespace {

constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMult1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline std::uint64_t mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi) noexcept {
    const auto prod = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(prod >> 64);
    return static_cast<std::uint64_t>(prod);
}

}  // namespace

void RandomStream::refill() noexcept {
    // Counter is advanced before each block; block k is produced at counter k+1.
    if (++counter_[0] == 0 && ++counter_[1] == 0 && ++counter_[2] == 0) ++counter_[3];

    std::uint64_t x0 = counter_[0], x1 = counter_[1], x2 = counter_[2], x3 = counter_[3];
    std::uint64_t k0 = key_[0], k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
        if (round != 0) {
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        std::uint64_t hi0 = 0, hi1 = 0;
        const std::uint64_t lo0 = mulhilo(kMult0, x0, hi0);
        const std::uint64_t lo1 = mulhilo(kMult1, x2, hi1);
        x0 = hi1 ^ x1 ^ k0;
        x1 = lo1;
        x2 = hi0 ^ x3 ^ k1;
        x3 = lo0;
    }
    buffer_[0] = x0;
    buffer_[1] = x1;
    buffer_[2] = x2;
    buffer_[3] = x3;
    buffer_pos_ = 0;
}

std::uint64_t RandomStream::next_u64() noexcept {
    if (buffer_pos_ >= 4) refill();
    return buffer_[buffer_pos_++];
}

double RandomStream::next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::next_exponential(double rate) noexcept {
    // -log(1-U) never overflows since U < 1 exactly.
    return -std::log1p(-next_double()) / rate;
}

std::complex<double> RandomStream::next_complex_gaussian(double variance) noexcept {
    const double radius = std::sqrt(-variance * std::log1p(-next_double()));
    const double angle = 2.0 * M_PI * next_double();
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace noma
