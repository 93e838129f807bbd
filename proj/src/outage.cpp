#include "noma/outage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "noma/errors.hpp"
#include "noma/quadrature.hpp"

namespace noma {

namespace {

// Failure probabilities shrink like rho^-user at high SNR, far below double
// epsilon of 1. All closed-form arithmetic runs in long double with expm1
// structure so intermediate magnitudes stay of order the failure itself.

// W(x) = (1 - e^-x)/x and its first two derivatives. W itself is stable via
// expm1 everywhere; the derivatives need a series once cancellation bites.
long double w0(long double x) {
    if (x == 0.0L) return 1.0L;
    return -std::expm1(-x) / x;
}

long double w1(long double x) {
    if (std::fabs(x) < 1e-2L)
        return -0.5L + x / 3.0L - x * x / 8.0L + x * x * x / 30.0L;
    return (std::exp(-x) * (1.0L + x) - 1.0L) / (x * x);
}

long double w2(long double x) {
    if (std::fabs(x) < 1e-2L)
        return 1.0L / 3.0L - x / 4.0L + x * x / 10.0L - x * x * x / 36.0L;
    return (2.0L - std::exp(-x) * (x * x + 2.0L * x + 2.0L)) / (x * x * x);
}

void require_three_users(const ValidatedConfig& cfg, const char* who) {
    if (cfg.num_users != 3)
        throw WrongEngine(std::string(who) + ": closed form covers M = 3 only, got M = " +
                          std::to_string(cfg.num_users));
}

void require_user(const ValidatedConfig& cfg, int user, const char* who) {
    if (user < 1 || user > cfg.num_users)
        throw std::invalid_argument(std::string(who) + ": user index out of range");
}

long double failure1_m3(long double phi, long double rho_s, long double a1) {
    return -std::expm1(-3.0L * phi / (rho_s * a1));
}

struct User2Terms {
    long double r;       // 1 / (1 - 3 a2 / (2 D)), in [-2, 0)
    long double x_slow;  // 2 phi / (rho a2)
    long double x_fast;  // 3 phi / (rho D)
};

User2Terms user2_terms(const ValidatedConfig& cfg, NoiseState s) {
    const long double phi = cfg.phi[1];
    const long double a1 = cfg.a[0], a2 = cfg.a[1];
    const long double denom = a2 - phi * a1;
    if (!(denom > 0.0L))
        throw ConditionViolated(
            "success_user2_m3: requires a2 > phi2*a1; use the general engine for this configuration");
    const long double rho_s = cfg.rho(s);
    User2Terms t;
    t.r = 1.0L / (1.0L - 1.5L * a2 / denom);
    t.x_slow = 2.0L * phi / (rho_s * a2);
    t.x_fast = 3.0L * phi / (rho_s * denom);
    return t;
}

long double success2_m3(const ValidatedConfig& cfg, NoiseState s) {
    const auto t = user2_terms(cfg, s);
    return (1.0L - t.r) * std::exp(-t.x_slow) + t.r * std::exp(-t.x_fast);
}

long double failure2_m3(const ValidatedConfig& cfg, NoiseState s) {
    const auto t = user2_terms(cfg, s);
    return -(1.0L - t.r) * std::expm1(-t.x_slow) - t.r * std::expm1(-t.x_fast);
}

struct User3Terms {
    long double c3;      // phi / (rho a3)
    long double t2;      // middle term of the closed form
    long double t3;      // last term
};

User3Terms user3_terms(const ValidatedConfig& cfg, NoiseState s) {
    const long double phi = cfg.phi[2];
    const long double a1 = cfg.a[0], a2 = cfg.a[1], a3 = cfg.a[2];
    const long double c1 = a3 - phi * a2;
    const long double c2 = a3 - phi * (a1 + a2);
    if (!(c2 > 0.0L))
        throw ConditionViolated(
            "success_user3_m3: requires a3 > phi3*(a1+a2); use the general engine for this "
            "configuration");
    const long double rho_s = cfg.rho(s);
    const long double u = phi / rho_s;
    const long double c3 = u / a3;
    const long double alpha = u / c1;
    const long double beta = a3 / c1;
    const long double k1 = 1.0L - 2.0L * a3 / c1;
    const long double k2 = 1.0L - 3.0L * a3 / c2;
    const long double k3 = 2.0L - 3.0L * c1 / c2;

    User3Terms t;
    t.c3 = c3;
    t.t2 = std::exp(-2.0L * alpha) * c3 * w0(c3 * k1);

    const long double pref = 2.0L * std::exp(-3.0L * u / c2);
    if (std::fabs(k3) > 1e-5L) {
        const long double k4 = k2 - beta * k3;
        const long double a_term = c3 * w0(c3 * k2);
        const long double b_term = std::exp(-alpha * k3) * c3 * w0(c3 * k4);
        t.t3 = pref * (a_term - b_term) / k3;
    } else {
        // Removable resonance at k3 = 0: (A - B(k3))/k3 -> -B'(0) - k3 B''(0)/2
        const long double x = c3 * k2;
        const long double b0 = c3 * w0(x);
        const long double b1 = -alpha * b0 - c3 * c3 * beta * w1(x);
        const long double b2 =
            alpha * alpha * b0 + 2.0L * alpha * c3 * c3 * beta * w1(x) + c3 * c3 * c3 * beta * beta * w2(x);
        t.t3 = pref * (-b1 - 0.5L * k3 * b2);
    }
    return t;
}

long double success3_m3(const ValidatedConfig& cfg, NoiseState s) {
    const auto t = user3_terms(cfg, s);
    return std::exp(-t.c3) + t.t2 + t.t3;
}

long double failure3_m3(const ValidatedConfig& cfg, NoiseState s) {
    const auto t = user3_terms(cfg, s);
    return -std::expm1(-t.c3) - t.t2 - t.t3;
}

// ---------------------------------------------------------------------------
// General-M engine: expectation over y_2..y_i of the conditional over y_1.
// ---------------------------------------------------------------------------

struct EventGeometry {
    int user = 1;       // i
    int num_users = 1;  // M
    double phi = 0.0;
    double rho_s = 1.0;
    const std::vector<double>* a = nullptr;
    double denom = 0.0;
    bool denom_zero = false;
};

EventGeometry event_geometry(int user, const ValidatedConfig& cfg, NoiseState s) {
    EventGeometry geo;
    geo.user = user;
    geo.num_users = cfg.num_users;
    geo.phi = cfg.phi[static_cast<std::size_t>(user - 1)];
    geo.rho_s = cfg.rho(s);
    geo.a = &cfg.a;
    double interference = 0.0;
    for (int q = 0; q < user - 1; ++q) interference += cfg.a[static_cast<std::size_t>(q)];
    const double ai = cfg.a[static_cast<std::size_t>(user - 1)];
    geo.denom = ai - geo.phi * interference;
    geo.denom_zero = std::fabs(geo.denom) <= 1e-12 * std::max(ai, geo.phi * interference);
    return geo;
}

// Numerator of the isolated-y_1 bound; y[k-2] holds y_k for k = 2..i.
double event_numerator(const EventGeometry& geo, const double* y) {
    const auto& a = *geo.a;
    const int i = geo.user;
    double prefix = 0.0;  // sum_{p=2}^{q} y_p
    double weighted = 0.0;
    for (int q = 2; q <= i - 1; ++q) {
        prefix += y[q - 2];
        weighted += a[static_cast<std::size_t>(q - 1)] * prefix;
    }
    const double total = prefix + y[i - 2];
    return geo.phi / geo.rho_s + geo.phi * weighted - a[static_cast<std::size_t>(i - 1)] * total;
}

// Pr(E_{i|s} | y_2..y_i): probability over y_1 ~ Exp(M) of the failure side,
// covering positive, zero and negative denominators.
double conditional_failure(const EventGeometry& geo, double numerator) {
    if (geo.denom_zero) return numerator < 0.0 ? 0.0 : 1.0;
    if (geo.denom > 0.0) {
        if (numerator <= 0.0) return 0.0;
        return -std::expm1(-geo.num_users * numerator / geo.denom);
    }
    if (numerator >= 0.0) return 1.0;
    return std::exp(-geo.num_users * numerator / geo.denom);
}

constexpr double kTailCut = 36.841361487904734;  // -ln(1e-16)

// Nested integration over y_k, outermost level k = i. Each level splits at
// the root of the numerator along its own coordinate (deeper coordinates at
// zero); for valid configurations that point bounds the whole failure region,
// which can be orders of magnitude narrower than the exponential tail.
double integrate_failure_level(const EventGeometry& geo, int k, std::vector<double>& y,
                               double abs_tol) {
    const double rate = static_cast<double>(geo.num_users + 1 - k);
    const double hi = kTailCut / rate;

    for (int j = 2; j < k; ++j) y[static_cast<std::size_t>(j - 2)] = 0.0;
    y[static_cast<std::size_t>(k - 2)] = 0.0;
    const double n0 = event_numerator(geo, y.data());
    y[static_cast<std::size_t>(k - 2)] = 1.0;
    const double slope = event_numerator(geo, y.data()) - n0;

    // Split at the kink root, plus both edges of the exp(-M N / D) boundary
    // layer: when |D| is far smaller than the power scale the conditional is
    // indicator-like, and the layer would otherwise be easy to under-resolve.
    double splits[3];
    std::size_t num_splits = 0;
    if (slope != 0.0) {
        const double root = -n0 / slope;
        const double layer =
            std::abs(geo.denom) / (static_cast<double>(geo.num_users) * std::abs(slope));
        for (const double candidate : {root, root - 40.0 * layer, root + 40.0 * layer})
            if (candidate > 0.0 && candidate < hi) splits[num_splits++] = candidate;
    }
    const std::span<const double> split_view{splits, num_splits};

    const auto integrand = [&](double yk) {
        y[static_cast<std::size_t>(k - 2)] = yk;
        const double inner = (k == 2) ? conditional_failure(geo, event_numerator(geo, y.data()))
                                      : integrate_failure_level(geo, k - 1, y, abs_tol);
        return inner * rate * std::exp(-rate * yk);
    };
    return integrate_adaptive(integrand, 0.0, hi, split_view, abs_tol).value;
}

SuccessEstimate success_general_quadrature(int user, const ValidatedConfig& cfg, NoiseState s,
                                           const GeneralOptions& options) {
    if (user > 4)
        throw std::invalid_argument(
            "success_general: quadrature backend supports user <= 4; use the conditional-MC backend");
    const EventGeometry geo = event_geometry(user, cfg, s);
    std::vector<double> y(static_cast<std::size_t>(user - 1), 0.0);
    const double failure = integrate_failure_level(geo, user, y, options.abs_tol);
    // Inner levels each contribute up to abs_tol against densities of mass <= 1.
    const double error = options.abs_tol * static_cast<double>(user - 1);
    return {std::clamp(1.0 - failure, 0.0, 1.0), error};
}

SuccessEstimate success_general_mc(int user, const ValidatedConfig& cfg, NoiseState s,
                                   std::uint64_t samples, RandomStream& stream) {
    if (samples == 0) throw std::invalid_argument("success_general: need at least one sample");
    const EventGeometry geo = event_geometry(user, cfg, s);
    std::vector<double> y(static_cast<std::size_t>(user - 1), 0.0);
    long double sum = 0.0L, sum_sq = 0.0L;
    for (std::uint64_t n = 0; n < samples; ++n) {
        for (int k = 2; k <= user; ++k)
            y[static_cast<std::size_t>(k - 2)] =
                stream.next_exponential(static_cast<double>(geo.num_users + 1 - k));
        const double fail = conditional_failure(geo, event_numerator(geo, y.data()));
        sum += fail;
        sum_sq += static_cast<long double>(fail) * fail;
    }
    const double mean = static_cast<double>(sum / static_cast<long double>(samples));
    const double var = std::max(
        0.0, static_cast<double>(sum_sq / static_cast<long double>(samples)) - mean * mean);
    const double se = std::sqrt(var / static_cast<double>(samples));
    return {std::clamp(1.0 - mean, 0.0, 1.0), se};
}

long double failure_ld(int user, const ValidatedConfig& cfg, NoiseState s);

}  // namespace

double success_user1_m3(const ValidatedConfig& cfg, NoiseState s) {
    require_three_users(cfg, "success_user1_m3");
    return static_cast<double>(
        std::exp(-3.0L * static_cast<long double>(cfg.phi[0]) / (cfg.rho(s) * cfg.a[0])));
}

double success_user2_m3(const ValidatedConfig& cfg, NoiseState s) {
    require_three_users(cfg, "success_user2_m3");
    return static_cast<double>(success2_m3(cfg, s));
}

double success_user3_m3(const ValidatedConfig& cfg, NoiseState s) {
    require_three_users(cfg, "success_user3_m3");
    return static_cast<double>(success3_m3(cfg, s));
}

SuccessEstimate success_general(int user, const ValidatedConfig& cfg, NoiseState s,
                                GeneralBackend backend, const GeneralOptions& options) {
    require_user(cfg, user, "success_general");
    if (user == 1) {
        const double value = std::exp(-cfg.num_users * cfg.phi[0] / (cfg.rho(s) * cfg.a[0]));
        return {value, 0.0};
    }
    if (backend == GeneralBackend::automatic)
        backend = user <= 4 ? GeneralBackend::quadrature : GeneralBackend::conditional_mc;
    if (backend == GeneralBackend::quadrature) return success_general_quadrature(user, cfg, s, options);
    RandomStream stream(options.mc_seed, options.mc_stream);
    return success_general_mc(user, cfg, s, options.mc_samples, stream);
}

namespace {

bool closed_form_applies(const ValidatedConfig& cfg, int user) {
    return cfg.num_users == 3 && closed_form_valid(cfg, user);
}

long double failure_ld(int user, const ValidatedConfig& cfg, NoiseState s) {
    if (closed_form_applies(cfg, user)) {
        switch (user) {
            case 1: return failure1_m3(cfg.phi[0], cfg.rho(s), cfg.a[0]);
            case 2: return failure2_m3(cfg, s);
            case 3: return failure3_m3(cfg, s);
            default: break;
        }
    }
    if (user == 1)
        return -std::expm1(-static_cast<long double>(cfg.num_users) * cfg.phi[0] /
                            (cfg.rho(s) * cfg.a[0]));
    const auto est = success_general(user, cfg, s);
    return 1.0L - static_cast<long double>(est.value);
}

}  // namespace

double success_probability(int user, const ValidatedConfig& cfg, NoiseState s) {
    require_user(cfg, user, "success_probability");
    if (closed_form_applies(cfg, user)) {
        switch (user) {
            case 1: return success_user1_m3(cfg, s);
            case 2: return success_user2_m3(cfg, s);
            case 3: return success_user3_m3(cfg, s);
            default: break;
        }
    }
    return success_general(user, cfg, s).value;
}

double failure_probability(int user, const ValidatedConfig& cfg, NoiseState s) {
    require_user(cfg, user, "failure_probability");
    return static_cast<double>(std::clamp(failure_ld(user, cfg, s), 0.0L, 1.0L));
}

SuccessProbTable success_table(const ValidatedConfig& cfg) {
    SuccessProbTable table;
    table.background.reserve(static_cast<std::size_t>(cfg.num_users));
    table.impulsive.reserve(static_cast<std::size_t>(cfg.num_users));
    for (int user = 1; user <= cfg.num_users; ++user) {
        table.background.push_back(success_probability(user, cfg, NoiseState::background));
        table.impulsive.push_back(success_probability(user, cfg, NoiseState::impulsive));
    }
    return table;
}

double outage(const ValidatedConfig& cfg, int user) {
    require_user(cfg, user, "outage");
    // One Bernoulli state covers the whole SIC chain of a detection epoch.
    long double chain[2];
    for (const NoiseState s : {NoiseState::background, NoiseState::impulsive}) {
        long double log_success = 0.0L;
        for (int i = user; i <= cfg.num_users; ++i) {
            const long double fail = std::clamp(failure_ld(i, cfg, s), 0.0L, 1.0L);
            log_success += std::log1p(-fail);
        }
        chain[s == NoiseState::background ? 0 : 1] = -std::expm1(log_success);
    }
    const long double p = cfg.noise.p;
    const long double op = (1.0L - p) * chain[0] + p * chain[1];
    return static_cast<double>(std::clamp(op, 0.0L, 1.0L));
}

double mixture_sinr(int user, const OrderedGains& gains, const ValidatedConfig& cfg) {
    require_user(cfg, user, "mixture_sinr");
    if (static_cast<int>(gains.g.size()) != cfg.num_users)
        throw std::invalid_argument("mixture_sinr: gains/config size mismatch");
    double interference = 0.0;
    for (int q = 0; q < user - 1; ++q)
        interference += cfg.a[static_cast<std::size_t>(q)] * gains.g[static_cast<std::size_t>(q)];
    const double signal =
        cfg.a[static_cast<std::size_t>(user - 1)] * gains.g[static_cast<std::size_t>(user - 1)];
    const double p = cfg.noise.p;
    return (1.0 - p) * signal / (interference + 1.0 / cfg.rho_w) +
           p * signal / (interference + 1.0 / cfg.rho_i);
}

double tdma_outage(const ValidatedConfig& cfg, int user, TdmaRateScaling scaling) {
    require_user(cfg, user, "tdma_outage");
    const double rate = cfg.rates[static_cast<std::size_t>(user - 1)];
    const double threshold = scaling == TdmaRateScaling::slots
                                 ? rate_threshold(cfg.num_users * rate)
                                 : cfg.phi[static_cast<std::size_t>(user - 1)];
    const double aj = cfg.a[static_cast<std::size_t>(user - 1)];
    const double fail_bg = -std::expm1(-threshold / (cfg.rho_w * aj));
    const double fail_imp = -std::expm1(-threshold / (cfg.rho_i * aj));
    return (1.0 - cfg.noise.p) * fail_bg + cfg.noise.p * fail_imp;
}

}  // namespace noma
