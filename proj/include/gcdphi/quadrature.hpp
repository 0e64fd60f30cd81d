#pragma once

#include <functional>

namespace gcdphi {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // Kronrod-minus-Gauss estimate, summed over intervals
    int intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b]: the interval with the
/// largest error estimate is bisected until the total estimate is below tol.
/// Throws NumericError if max_intervals is reached first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol, int max_intervals = 20000);

}  // namespace gcdphi
