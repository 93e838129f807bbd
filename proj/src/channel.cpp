#include "noma/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace noma {

OrderedGains sample_ordered_gains_sort(int num_users, RandomStream& stream) {
    if (num_users < 1) throw std::invalid_argument("sample_ordered_gains_sort: need at least one user");
    OrderedGains out;
    out.g.resize(static_cast<std::size_t>(num_users));
    for (double& gain : out.g) gain = stream.next_exponential(1.0);
    std::sort(out.g.begin(), out.g.end());
    return out;
}

OrderedGains sample_ordered_gains_decomposition(int num_users, RandomStream& stream) {
    if (num_users < 1)
        throw std::invalid_argument("sample_ordered_gains_decomposition: need at least one user");
    OrderedGains out;
    out.g.resize(static_cast<std::size_t>(num_users));
    double acc = 0.0;
    for (int k = 1; k <= num_users; ++k) {
        acc += stream.next_exponential(static_cast<double>(num_users + 1 - k));
        out.g[static_cast<std::size_t>(k - 1)] = acc;
    }
    return out;
}

double noise_pdf(std::complex<double> n, const NoiseParams& params) {
    const double mag2 = std::norm(n);
    const double var_bg = params.sigma_w2;
    const double var_imp = params.sigma_w2 + params.sigma_i2();
    const double bg = std::exp(-mag2 / var_bg) / (M_PI * var_bg);
    const double imp = std::exp(-mag2 / var_imp) / (M_PI * var_imp);
    return (1.0 - params.p) * bg + params.p * imp;
}

NoiseSample sample_noise(const NoiseParams& params, RandomStream& stream) {
    const NoiseState state =
        stream.next_bernoulli(params.p) ? NoiseState::impulsive : NoiseState::background;
    return {stream.next_complex_gaussian(params.variance(state)), state};
}

}  // namespace noma
