#pragma once
// High-SNR behaviour: finite-SNR diversity slopes from outage curves and the
// leading-order outage expansion that exposes how impulsive noise delays the
// asymptotic regime without changing its order.

#include <span>
#include <vector>

#include "noma/config.hpp"

namespace noma {

struct CurvePoint {
    double rho_w_db = 0.0;
    double op = 0.0;
};

using OutageCurve = std::vector<CurvePoint>;

/// Least-squares slope of -log10(OP) against log10(rho_w) over the points
/// with rho_w_db inside [window_lo_db, window_hi_db]. Needs at least two
/// in-window points; every OP must be positive.
double diversity_slope(std::span<const CurvePoint> curve, double window_lo_db,
                       double window_hi_db);

/// Asymptotic diversity order of sorted user j; impulsive noise leaves it at j.
constexpr int asymptotic_diversity(int user) { return user; }

/// Leading-order outage in 1/rho_w for M = 3 under the closed-form validity
/// conditions:
///   OP_j ~ beta_j * ((1-p) + p*(gamma+1)^j) / rho_w^j
/// with beta_1 = 3 phi_1/a_1, beta_2 = 3 phi_2^2/(a_2 (a_2 - phi_2 a_1)),
/// beta_3 = phi_3^3/(a_3 (a_3 - phi_3 a_2)(a_3 - phi_3(a_1+a_2))).
/// The impulsive factor grows like (gamma+1)^j, which is what postpones the
/// slope-j regime.
double high_snr_outage_approx(int user, const ValidatedConfig& cfg);

}  // namespace noma
