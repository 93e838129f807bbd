#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "noma/rng.hpp"

using noma::RandomStream;

// Reference outputs for Philox4x64-10 with the increment-before-block
// counter convention, generated with an independent implementation.
TEST_CASE("philox known answers") {
    struct Case {
        std::uint64_t seed, stream;
        std::uint64_t expected[8];
    };
    const Case cases[] = {
        {0x0ULL, 0x0ULL,
         {0x02f4ba6408e4d89bULL, 0x3dd62b0b9ca8c5b2ULL, 0x1c8667a55d902e79ULL,
          0x907d7a052fd5b4dcULL, 0x809bf322883987c3ULL, 0x471128b9e807f7ddULL,
          0xf250ba0dbec065b7ULL, 0xfc6ed66767a457bcULL}},
        {0x2aULL, 0x0ULL,
         {0xd1f8817d4d62880eULL, 0x307266b65cc8797eULL, 0xde1f04e7f084ed03ULL,
          0x65034a8e78cd1e59ULL, 0x5e3daa8961c3e3d3ULL, 0x6f37dea4a04bd05cULL,
          0x31d3a1ae26e190b9ULL, 0x0fef7fae0ab2a01aULL}},
        {0x2aULL, 0x1ULL,
         {0x719965f2debb5c86ULL, 0xd0ff12852bfefaa0ULL, 0x824f8a46917b59d3ULL,
          0x633af9b3183bb36aULL, 0x0665962d67a5a63aULL, 0x58fb335daa5560b5ULL,
          0xf7121f0faa702e07ULL, 0xc5ae1d90ae3ad1a6ULL}},
        {0x123456789abcdef0ULL, 0xfedcba9876543210ULL,
         {0x8bc901e53fb86a49ULL, 0x6dbb2b5e6a3a2cddULL, 0x19dc5fbadf53af97ULL,
          0x5110f61587fd69e6ULL, 0x524a19fa5390f347ULL, 0x9465b1d981f58effULL,
          0xa56e044e44149c58ULL, 0x179815a59198306bULL}},
    };
    for (const auto& c : cases) {
        RandomStream stream(c.seed, c.stream);
        for (const std::uint64_t expected : c.expected) CHECK(stream.next_u64() == expected);
    }
}

TEST_CASE("identical keys replay identical sequences") {
    RandomStream a(77, 3), b(77, 3);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream ids decorrelate") {
    RandomStream a(77, 0), b(77, 1);
    int collisions = 0;
    for (int i = 0; i < 1000; ++i)
        if (a.next_u64() == b.next_u64()) ++collisions;
    CHECK(collisions == 0);
}

TEST_CASE("uniform doubles stay in [0,1) with sane mean") {
    RandomStream stream(123, 0);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = stream.next_double();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("exponential mean matches 1/rate") {
    RandomStream stream(5, 9);
    const double rate = 2.5;
    double sum = 0.0;
    const int n = 400000;
    for (int i = 0; i < n; ++i) sum += stream.next_exponential(rate);
    CHECK(sum / n == doctest::Approx(1.0 / rate).epsilon(0.01));
}

TEST_CASE("complex gaussian second moment equals the variance parameter") {
    RandomStream stream(6, 4);
    const double variance = 3.0;
    double sum_mag2 = 0.0;
    const int n = 400000;
    for (int i = 0; i < n; ++i) sum_mag2 += std::norm(stream.next_complex_gaussian(variance));
    CHECK(sum_mag2 / n == doctest::Approx(variance).epsilon(0.02));
}

TEST_CASE("bernoulli edge probabilities are exact") {
    RandomStream stream(1, 1);
    for (int i = 0; i < 1000; ++i) {
        CHECK_FALSE(stream.next_bernoulli(0.0));
        CHECK(stream.next_bernoulli(1.0));
    }
}
