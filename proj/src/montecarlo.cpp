#include "noma/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "noma/channel.hpp"

namespace noma {

namespace {

// Counts outages per user for `count` trials on one stream. counts[j-1]
// accumulates user j's outage events.
void run_noma_chunk(const ValidatedConfig& cfg, std::uint64_t count, RandomStream& stream,
                    std::vector<std::uint64_t>& counts) {
    const int users = cfg.num_users;
    std::vector<double> gains(static_cast<std::size_t>(users));
    for (std::uint64_t t = 0; t < count; ++t) {
        for (double& g : gains) g = stream.next_exponential(1.0);
        std::sort(gains.begin(), gains.end());
        const double rho = stream.next_bernoulli(cfg.noise.p) ? cfg.rho_i : cfg.rho_w;

        // SIC top-down: user i sees users below as interference. Failure of
        // user i outages every user j <= i, so only the highest failure matters.
        int highest_failed = 0;
        double interference = 0.0;
        for (int i = 1; i <= users; ++i) {
            const double signal = cfg.a[static_cast<std::size_t>(i - 1)] * gains[static_cast<std::size_t>(i - 1)];
            const double sinr = signal / (interference + 1.0 / rho);
            if (!(sinr > cfg.phi[static_cast<std::size_t>(i - 1)])) highest_failed = i;
            interference += signal;
        }
        for (int j = 1; j <= highest_failed; ++j) ++counts[static_cast<std::size_t>(j - 1)];
    }
}

void run_tdma_chunk(const ValidatedConfig& cfg, std::uint64_t count, RandomStream& stream,
                    TdmaRateScaling scaling, std::vector<std::uint64_t>& counts) {
    const int users = cfg.num_users;
    std::vector<double> thresholds(static_cast<std::size_t>(users));
    for (int j = 1; j <= users; ++j)
        thresholds[static_cast<std::size_t>(j - 1)] =
            scaling == TdmaRateScaling::slots
                ? rate_threshold(users * cfg.rates[static_cast<std::size_t>(j - 1)])
                : cfg.phi[static_cast<std::size_t>(j - 1)];
    for (std::uint64_t t = 0; t < count; ++t) {
        for (int j = 1; j <= users; ++j) {
            const double gain = stream.next_exponential(1.0);
            const double rho = stream.next_bernoulli(cfg.noise.p) ? cfg.rho_i : cfg.rho_w;
            const double snr = cfg.a[static_cast<std::size_t>(j - 1)] * gain * rho;
            if (!(snr > thresholds[static_cast<std::size_t>(j - 1)]))
                ++counts[static_cast<std::size_t>(j - 1)];
        }
    }
}

template <typename ChunkFn>
OutageEstimate estimate_chunked(const ValidatedConfig& cfg, std::uint64_t trials,
                                std::uint64_t seed, std::uint64_t stream_base, ChunkFn&& chunk_fn) {
    if (trials == 0) throw std::invalid_argument("estimate_outage: need at least one trial");
    const std::uint64_t num_chunks = (trials + kTrialChunk - 1) / kTrialChunk;
    const std::size_t users = static_cast<std::size_t>(cfg.num_users);

    const int workers = std::max(1, std::min<int>(worker_count(), static_cast<int>(num_chunks)));
    std::vector<std::vector<std::uint64_t>> partial(
        static_cast<std::size_t>(workers), std::vector<std::uint64_t>(users, 0));
    std::atomic<std::uint64_t> next_chunk{0};

    auto worker = [&](int w) {
        auto& counts = partial[static_cast<std::size_t>(w)];
        for (;;) {
            const std::uint64_t c = next_chunk.fetch_add(1);
            if (c >= num_chunks) break;
            const std::uint64_t begin = c * kTrialChunk;
            const std::uint64_t count = std::min<std::uint64_t>(kTrialChunk, trials - begin);
            RandomStream stream(seed, stream_base + c);
            chunk_fn(count, stream, counts);
        }
    };

    if (workers == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }

    OutageEstimate out(users);
    for (std::size_t j = 0; j < users; ++j) {
        std::uint64_t total = 0;
        for (const auto& counts : partial) total += counts[j];
        auto& e = out[j];
        e.outage_count = total;
        e.trials = trials;
        e.op_hat = static_cast<double>(total) / static_cast<double>(trials);
        std::tie(e.ci_low, e.ci_high) = wilson_interval(total, trials);
    }
    return out;
}

}  // namespace

TrialOutcome run_trial(const ValidatedConfig& cfg, RandomStream& stream) {
    const OrderedGains gains = sample_ordered_gains_sort(cfg.num_users, stream);
    const NoiseState state =
        stream.next_bernoulli(cfg.noise.p) ? NoiseState::impulsive : NoiseState::background;
    const double rho = cfg.rho(state);

    TrialOutcome outcome;
    outcome.noise_state = state;
    outcome.decode_ok.resize(static_cast<std::size_t>(cfg.num_users));
    double interference = 0.0;
    for (int i = 1; i <= cfg.num_users; ++i) {
        const double signal =
            cfg.a[static_cast<std::size_t>(i - 1)] * gains.g[static_cast<std::size_t>(i - 1)];
        outcome.decode_ok[static_cast<std::size_t>(i - 1)] =
            signal / (interference + 1.0 / rho) > cfg.phi[static_cast<std::size_t>(i - 1)];
        interference += signal;
    }
    return outcome;
}

OutageEstimate estimate_outage(const ValidatedConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                               std::uint64_t stream_base) {
    return estimate_chunked(cfg, trials, seed, stream_base,
                            [&cfg](std::uint64_t count, RandomStream& stream,
                                   std::vector<std::uint64_t>& counts) {
                                run_noma_chunk(cfg, count, stream, counts);
                            });
}

OutageEstimate estimate_tdma_outage(const ValidatedConfig& cfg, std::uint64_t trials,
                                    std::uint64_t seed, TdmaRateScaling scaling,
                                    std::uint64_t stream_base) {
    return estimate_chunked(cfg, trials, seed, stream_base,
                            [&cfg, scaling](std::uint64_t count, RandomStream& stream,
                                            std::vector<std::uint64_t>& counts) {
                                run_tdma_chunk(cfg, count, stream, scaling, counts);
                            });
}

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("inverse_normal_cdf: p must be in (0,1)");
    static const double a[] = {-39.69683028665376, 220.9460984245205,  -275.9285104469687,
                               138.3577518672690,  -30.66479806614716, 2.506628277459239};
    static const double b[] = {-54.47609879822406, 161.5858368580409, -155.6989798598866,
                               66.80131188771972, -13.28068155288572};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838,
                               -2.549732539343734,     4.374664141464968,      2.938163982698783};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996,
                               3.754408661907416};
    const double p_low = 0.02425;
    double q, r;
    if (p < p_low) {
        q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double level) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: need at least one trial");
    if (successes > trials) throw std::invalid_argument("wilson_interval: successes exceed trials");
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("wilson_interval: level must be in (0,1)");
    const double z = inverse_normal_cdf(0.5 + level / 2.0);
    const double n = static_cast<double>(trials);
    const double p_hat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p_hat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)) / denom;
    // zero-count endpoints are exact, not float residue
    const double low = successes == 0 ? 0.0 : std::max(0.0, center - half);
    const double high = successes == trials ? 1.0 : std::min(1.0, center + half);
    return {low, high};
}

int worker_count() {
    if (const char* env = std::getenv("NOMA_WORKERS")) {
        const int parsed = std::atoi(env);
        if (parsed >= 1) return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace noma
