#pragma once
// Adaptive Gauss-Kronrod (G7,K15) integration on a finite interval, with
// caller-supplied interior knots for integrands that are only piecewise
// smooth.

#include <functional>
#include <span>

namespace noma {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // absolute error estimate
};

/// Integrates f over [lo, hi] to the requested absolute tolerance. Interior
/// split points force subdivision boundaries at known kinks. Throws
/// AccuracyError (carrying the achieved estimate) when the interval budget is
/// exhausted first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    std::span<const double> split_points, double abs_tol,
                                    int max_intervals = 4000);

}  // namespace noma
