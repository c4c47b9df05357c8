#include "wsde/optimize.hpp"

#include <cmath>

#include "wsde/error.hpp"

namespace wsde {

Minimum brent_minimize(const std::function<double(double)>& f, double lo, double hi, double tol, int max_iterations) {
    constexpr double kGolden = 0.3819660112501051; // (3 - sqrt 5) / 2
    double a = lo, b = hi;
    double x = a + kGolden * (b - a);
    double w = x, v = x;
    double fx = f(x);
    double fw = fx, fv = fx;
    double d = 0.0, e = 0.0;

    Minimum out;
    for (int iter = 1; iter <= max_iterations; ++iter) {
        out.iterations = iter;
        const double mid = 0.5 * (a + b);
        const double tol1 = tol + 1e-15 * std::abs(x);
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - mid) <= tol2 - 0.5 * (b - a)) {
            out.converged = true;
            break;
        }
        bool golden = true;
        if (std::abs(e) > tol1) {
            // parabola through x, w, v
            double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            const double e_prev = e;
            e = d;
            if (std::isfinite(p) && std::isfinite(q) && std::abs(p) < std::abs(0.5 * q * e_prev) &&
                p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = x < mid ? tol1 : -tol1;
                golden = false;
            }
        }
        if (golden) {
            e = (x >= mid) ? a - x : b - x;
            d = kGolden * e;
        }
        const double u = std::abs(d) >= tol1 ? x + d : x + (d > 0.0 ? tol1 : -tol1);
        const double fu = f(u);
        if (fu <= fx) {
            if (u >= x) a = x; else b = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    out.x = x;
    out.fx = fx;
    return out;
}

Root bisect(const std::function<double(double)>& f, double lo, double hi, double tol, int max_iterations) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return {lo, 0, true};
    if (fhi == 0.0) return {hi, 0, true};
    if ((flo > 0.0) == (fhi > 0.0)) throw Error(ErrorCode::NoSignChange, "bisection bracket has no sign change");
    Root out;
    for (int iter = 1; iter <= max_iterations; ++iter) {
        out.iterations = iter;
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if (fmid == 0.0) {
            lo = hi = mid;
        } else if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
        if (hi - lo <= tol) {
            out.converged = true;
            break;
        }
    }
    out.x = 0.5 * (lo + hi);
    return out;
}

} // namespace wsde
