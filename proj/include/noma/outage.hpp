#pragma once
// Analytic per-user success and outage probabilities for uplink power-domain
// NOMA under two-state Bernoulli-Gaussian noise, with perfect SIC.
//
// The detection event for sorted user i in noise state s is
//     a_i g_i / (sum_{q<i} a_q g_q + 1/rho_s) > phi_i,
// with g the ascending ordered gains. Writing the ordered gains as prefix
// sums of independent exponentials y_k ~ Exp(M+1-k) isolates y_1 and turns
// the success probability into an expectation over y_2..y_i of a clamped
// exponential CDF. Three-user closed forms exist; a nested-quadrature /
// conditional-Monte-Carlo engine covers everything else.

#include <cstdint>
#include <vector>

#include "noma/channel.hpp"
#include "noma/config.hpp"
#include "noma/rng.hpp"

namespace noma {

/// Pr(success) per (user, state); background entry never below the impulsive
/// one at identical configuration.
struct SuccessProbTable {
    std::vector<double> background;
    std::vector<double> impulsive;

    double at(int user, NoiseState s) const {
        const auto& column = (s == NoiseState::background) ? background : impulsive;
        return column.at(static_cast<std::size_t>(user - 1));
    }
};

// Three-user closed forms. Users 2 and 3 require the validity condition
// a_i > phi_i * sum_{q<i} a_q and throw ConditionViolated otherwise; calling
// with M != 3 throws WrongEngine.
double success_user1_m3(const ValidatedConfig& cfg, NoiseState s);
double success_user2_m3(const ValidatedConfig& cfg, NoiseState s);
double success_user3_m3(const ValidatedConfig& cfg, NoiseState s);

enum class GeneralBackend {
    automatic,       // quadrature for user <= 4, conditional MC above
    quadrature,      // deterministic nested integration (user <= 4)
    conditional_mc,  // sample y_2..y_i, average the exact conditional over y_1
};

struct GeneralOptions {
    double abs_tol = 1e-8;             // per integration level
    std::uint64_t mc_samples = 1'000'000;
    std::uint64_t mc_seed = 0x6f75746167650aULL;
    std::uint64_t mc_stream = 0;
};

struct SuccessEstimate {
    double value = 0.0;
    double error = 0.0;  // absolute error estimate (quadrature bound or MC standard error)
};

/// General-M success probability Pr(E^c_{user|s}); covers all three sign
/// cases of the isolated-y_1 event, including denominators at or below zero.
SuccessEstimate success_general(int user, const ValidatedConfig& cfg, NoiseState s,
                                GeneralBackend backend = GeneralBackend::automatic,
                                const GeneralOptions& options = {});

/// Closed form when M == 3 and the validity condition holds, general engine
/// otherwise.
double success_probability(int user, const ValidatedConfig& cfg, NoiseState s);

/// Failure probability 1 - Pr(E^c_{user|s}), evaluated without cancellation
/// so that values far below machine epsilon of 1 keep relative accuracy.
double failure_probability(int user, const ValidatedConfig& cfg, NoiseState s);

SuccessProbTable success_table(const ValidatedConfig& cfg);

/// Outage of sorted user `user`: the whole SIC chain user..M must decode,
/// mixed over the common noise state of the detection epoch.
double outage(const ValidatedConfig& cfg, int user);

/// Occurrence-weighted instantaneous SINR, (1-p) times the background-state
/// value plus p times the impulsive-state value. Diagnostic only: outage
/// conditions on the noise state and never averages SINRs across states.
double mixture_sinr(int user, const OrderedGains& gains, const ValidatedConfig& cfg);

enum class TdmaRateScaling {
    slots,  // each user holds 1/M of the time: threshold 2^(M R) - 1
    none,   // same per-user threshold as NOMA
};

/// Orthogonal baseline: per-user transmission over an unordered unit-mean
/// Rayleigh channel with the same two-state noise.
double tdma_outage(const ValidatedConfig& cfg, int user,
                   TdmaRateScaling scaling = TdmaRateScaling::slots);

}  // namespace noma
