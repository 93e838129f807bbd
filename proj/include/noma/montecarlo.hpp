#pragma once
// Full-joint link-level Monte Carlo: ordered fading, one Bernoulli noise
// state per trial, the SIC decoding chain, and outage counting for NOMA and
// the TDMA baseline. Trials run in fixed-size chunks with one counter-based
// stream per chunk, so counts are bit-identical for a given (seed, trials)
// regardless of how many workers execute them.

#include <cstdint>
#include <utility>
#include <vector>

#include "noma/config.hpp"
#include "noma/outage.hpp"
#include "noma/rng.hpp"

namespace noma {

struct TrialOutcome {
    std::vector<bool> decode_ok;  // per sorted user
    NoiseState noise_state;
};

struct UserOutageEstimate {
    double op_hat = 0.0;
    std::uint64_t trials = 0;
    double ci_low = 0.0;   // 95% Wilson score interval
    double ci_high = 0.0;
    std::uint64_t outage_count = 0;
};

using OutageEstimate = std::vector<UserOutageEstimate>;  // indexed by user-1

constexpr std::uint64_t kTrialChunk = 1u << 16;

/// Stream-id bases keep estimator families on disjoint counter-based streams.
constexpr std::uint64_t kTdmaStreamTag = 1ull << 62;

/// One fading/noise realization and the SIC chain decoded top-down; decoded
/// signals are cancelled perfectly, users below contribute interference.
TrialOutcome run_trial(const ValidatedConfig& cfg, RandomStream& stream);

/// Per-user outage estimates from `trials` independent trials. `stream_base`
/// offsets the chunk stream ids so that several estimates can share one seed
/// without reusing randomness.
OutageEstimate estimate_outage(const ValidatedConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                               std::uint64_t stream_base = 0);

/// Orthogonal baseline: per user an independent unordered unit-mean gain and
/// a noise state; outage iff a_j g rho_s <= threshold.
OutageEstimate estimate_tdma_outage(const ValidatedConfig& cfg, std::uint64_t trials,
                                    std::uint64_t seed,
                                    TdmaRateScaling scaling = TdmaRateScaling::slots,
                                    std::uint64_t stream_base = kTdmaStreamTag);

/// Wilson score interval for `successes` events in `trials`.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double level = 0.95);

/// Inverse standard normal CDF (Acklam's rational approximation).
double inverse_normal_cdf(double p);

/// Worker threads for chunk execution: NOMA_WORKERS env var if set, otherwise
/// hardware concurrency.
int worker_count();

}  // namespace noma
