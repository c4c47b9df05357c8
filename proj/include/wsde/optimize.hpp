#pragma once

#include <functional>

namespace wsde {

struct Minimum {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Brent's golden-section / parabolic minimizer on [lo, hi]. Stops when the
/// bracket around the best point is narrower than 2 * (tol + 1e-15 |x|).
Minimum brent_minimize(const std::function<double(double)>& f, double lo, double hi, double tol, int max_iterations);

struct Root {
    double x = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Bisection on [lo, hi]; f(lo) and f(hi) must differ in sign.
Root bisect(const std::function<double(double)>& f, double lo, double hi, double tol, int max_iterations);

} // namespace wsde
