#pragma once
// Rayleigh fading gain samplers (two interchangeable constructions) and the
// Bernoulli-Gaussian noise model.

#include <complex>
#include <vector>

#include "noma/config.hpp"
#include "noma/rng.hpp"

namespace noma {

/// One realization of the sorted instantaneous channel power gains,
/// g[0] <= g[1] <= ... <= g[M-1], each marginally the i-th order statistic
/// of M unit-mean exponentials.
struct OrderedGains {
    std::vector<double> g;
};

struct NoiseSample {
    std::complex<double> value;
    NoiseState state;
};

/// Draws M unit-mean exponential power gains (squared magnitude of a
/// unit-variance complex Gaussian) and sorts ascending.
OrderedGains sample_ordered_gains_sort(int num_users, RandomStream& stream);

/// Same distribution via the order-statistics identity: the i-th sorted gain
/// equals in law the prefix sum of independent y_k ~ Exp(M+1-k). Ascending by
/// construction.
OrderedGains sample_ordered_gains_decomposition(int num_users, RandomStream& stream);

/// Mixture density of the combined noise at amplitude n.
double noise_pdf(std::complex<double> n, const NoiseParams& params);

/// State drawn Bernoulli(p); amplitude from that state's Gaussian.
NoiseSample sample_noise(const NoiseParams& params, RandomStream& stream);

}  // namespace noma
