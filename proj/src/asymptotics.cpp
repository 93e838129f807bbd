#include "noma/asymptotics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "noma/errors.hpp"

namespace noma {

double diversity_slope(std::span<const CurvePoint> curve, double window_lo_db,
                       double window_hi_db) {
    if (!(window_lo_db < window_hi_db))
        throw std::invalid_argument("diversity_slope: window must satisfy lo < hi");
    for (std::size_t i = 1; i < curve.size(); ++i)
        if (!(curve[i].rho_w_db > curve[i - 1].rho_w_db))
            throw std::invalid_argument("diversity_slope: curve must be strictly increasing in dB");

    double sum_x = 0.0, sum_y = 0.0, n = 0.0;
    for (const auto& pt : curve) {
        if (pt.rho_w_db < window_lo_db || pt.rho_w_db > window_hi_db) continue;
        if (!(pt.op > 0.0))
            throw std::domain_error("diversity_slope: degenerate curve, OP must be positive");
        sum_x += pt.rho_w_db / 10.0;  // log10 of the linear SNR
        sum_y += -std::log10(pt.op);
        n += 1.0;
    }
    if (n < 2.0)
        throw std::invalid_argument("diversity_slope: need at least two points inside the window");

    const double mean_x = sum_x / n, mean_y = sum_y / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& pt : curve) {
        if (pt.rho_w_db < window_lo_db || pt.rho_w_db > window_hi_db) continue;
        const double dx = pt.rho_w_db / 10.0 - mean_x;
        sxx += dx * dx;
        sxy += dx * (-std::log10(pt.op) - mean_y);
    }
    if (sxx == 0.0) throw std::invalid_argument("diversity_slope: window has no dB spread");
    return sxy / sxx;
}

double high_snr_outage_approx(int user, const ValidatedConfig& cfg) {
    if (cfg.num_users != 3)
        throw WrongEngine("high_snr_outage_approx: expansion derived for M = 3 only");
    if (user < 1 || user > 3)
        throw std::invalid_argument("high_snr_outage_approx: user must be 1, 2 or 3");
    for (int i = 2; i <= user; ++i)
        if (!closed_form_valid(cfg, i))
            throw ConditionViolated(
                "high_snr_outage_approx: closed-form validity condition violated for user " +
                std::to_string(i));

    const double a1 = cfg.a[0];
    double beta = 0.0;
    switch (user) {
        case 1:
            beta = 3.0 * cfg.phi[0] / a1;
            break;
        case 2: {
            const double a2 = cfg.a[1];
            beta = 3.0 * cfg.phi[1] * cfg.phi[1] / (a2 * (a2 - cfg.phi[1] * a1));
            break;
        }
        case 3: {
            const double a2 = cfg.a[1], a3 = cfg.a[2], phi = cfg.phi[2];
            beta = phi * phi * phi / (a3 * (a3 - phi * a2) * (a3 - phi * (a1 + a2)));
            break;
        }
        default:
            break;
    }
    const double state_mix =
        (1.0 - cfg.noise.p) + cfg.noise.p * std::pow(cfg.noise.gamma + 1.0, user);
    return beta * state_mix / std::pow(cfg.rho_w, user);
}

}  // namespace noma
