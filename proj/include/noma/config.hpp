#pragma once
// Scenario description shared by the analytic and Monte Carlo engines.
// Everything is validated once; the validated form is immutable and safe to
// share across threads.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace noma {

/// Two-state noise, common to one whole detection epoch.
enum class NoiseState { background, impulsive };

/// Bernoulli-Gaussian mixture: background Gaussian (variance sigma_w2) with
/// probability 1-p, background plus impulse (variance sigma_w2*(1+gamma))
/// with probability p.
struct NoiseParams {
    double p = 0.0;         // impulse occurrence probability
    double gamma = 0.0;     // impulsive-to-Gaussian power ratio, sigma_I^2 / sigma_w^2
    double sigma_w2 = 1.0;  // background noise variance (linear)

    double sigma_i2() const { return gamma * sigma_w2; }
    double rho_w() const { return 1.0 / sigma_w2; }
    double rho_i() const { return rho_w() / (gamma + 1.0); }
    double variance(NoiseState s) const {
        return s == NoiseState::background ? sigma_w2 : sigma_w2 * (1.0 + gamma);
    }
};

/// Power ladder: user i transmits beta_db stronger than user i-1.
struct BackoffPowers {
    double a1 = 1.0;
    double beta_db = 0.0;
};

using PowerAllocation = std::variant<std::vector<double>, BackoffPowers>;

struct SystemConfig {
    int num_users = 0;                 // M, powers and rates are indexed by sorted user
    PowerAllocation powers;
    std::vector<double> target_rates;  // bits/s/Hz
    NoiseParams noise;
    double rho_w_db = 0.0;             // average background SNR, dB
};

/// SystemConfig with every derived quantity attached. Immutable after
/// validation; dB-to-linear conversion happens exactly once, here.
struct ValidatedConfig {
    int num_users = 0;
    std::vector<double> a;      // expanded power vector
    std::vector<double> rates;
    std::vector<double> phi;    // per-user SINR thresholds 2^R - 1
    NoiseParams noise;
    double rho_w_db = 0.0;
    double rho_w = 1.0;         // 10^(rho_w_db/10)
    double rho_i = 1.0;         // rho_w / (gamma + 1)

    double rho(NoiseState s) const { return s == NoiseState::background ? rho_w : rho_i; }
    double p() const { return noise.p; }
};

/// 2^R - 1; throws std::invalid_argument for negative rates.
double rate_threshold(double rate_bits);

/// a_i = a1 * 10^(beta_db*(i-1)/10) for i = 1..num_users.
std::vector<double> powers_from_backoff(double a1, double beta_db, int num_users);

/// (rho_w, rho_I) from a dB SNR: rho_w = 10^(db/10), rho_I = rho_w/(gamma+1).
std::pair<double, double> noise_precisions(const NoiseParams& noise, double rho_w_db);

/// Checks every invariant and attaches derived quantities. Throws ConfigError
/// listing each violation.
ValidatedConfig validate(const SystemConfig& cfg);

/// Closed-form validity a_i > phi_i * sum_{q<i} a_q for the given user.
bool closed_form_valid(const ValidatedConfig& cfg, int user);

// ---------------------------------------------------------------------------
// key = value scenario files. Recognized keys: M, a (comma list) or
// a1 + beta_db, rates (comma list), p, gamma, rho_w_db. '#' starts a comment.
// Unknown keys are an error.
// ---------------------------------------------------------------------------

struct ConfigFile {
    std::optional<int> num_users;
    std::optional<std::vector<double>> a;
    std::optional<double> a1;
    std::optional<double> beta_db;
    std::optional<std::vector<double>> rates;
    std::optional<double> p;
    std::optional<double> gamma;
    std::optional<double> rho_w_db;
};

ConfigFile parse_config_text(std::string_view text);
ConfigFile load_config_file(const std::string& path);

/// Assembles a SystemConfig, reporting every missing or conflicting key.
SystemConfig make_system_config(const ConfigFile& file);

}  // namespace noma
