#pragma once

// Scalar root finding on a sign-changing bracket.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "born/core.hpp"

namespace born::roots {

class bracket_error : public domain_error {
public:
    using domain_error::domain_error;
};

struct Root {
    double x;
    int iterations;
};

/// Brent's method. Requires f(a) and f(b) of opposite sign (or zero).
/// Stops when the bracket is narrower than xtol + 4 eps |x|.
template <class F>
Root brent(F&& f, double a, double b, double xtol) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return {a, 0};
    if (fb == 0.0) return {b, 0};
    if ((fa > 0.0) == (fb > 0.0)) throw bracket_error("brent: root is not bracketed");

    double c = a, fc = fa, d = b - a, e = d;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int it = 1; it <= 300; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return {b, it};
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::fabs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    return {b, 300};
}

/// Newton iteration safeguarded by bisection. `fdf(x)` returns {f, f'}.
template <class FdF>
Root newton_bisect(FdF&& fdf, double lo, double hi, double x0, double xtol) {
    auto [flo, dlo] = fdf(lo);
    auto [fhi, dhi] = fdf(hi);
    (void)dlo;
    (void)dhi;
    if (flo == 0.0) return {lo, 0};
    if (fhi == 0.0) return {hi, 0};
    if ((flo > 0.0) == (fhi > 0.0)) throw bracket_error("newton: root is not bracketed");
    if (flo > 0.0) std::swap(lo, hi);  // keep f(lo) < 0

    double x = (x0 > std::min(lo, hi) && x0 < std::max(lo, hi)) ? x0 : 0.5 * (lo + hi);
    for (int it = 1; it <= 200; ++it) {
        const auto [fx, dfx] = fdf(x);
        if (fx == 0.0) return {x, it};
        if (fx < 0.0)
            lo = x;
        else
            hi = x;
        double next = x - fx / dfx;
        const bool inside = dfx != 0.0 && std::isfinite(next) && next > std::min(lo, hi) && next < std::max(lo, hi);
        if (!inside) next = 0.5 * (lo + hi);
        const double step = std::fabs(next - x);
        x = next;
        if (step <= xtol * std::max(1.0, std::fabs(x)) || std::fabs(hi - lo) <= xtol * std::max(1.0, std::fabs(x)))
            return {x, it};
    }
    return {x, 200};
}

/// Grow `hi` geometrically until f(hi) > 0 for an increasing f with f(lo) < 0.
template <class F>
double expand_upper(F&& f, double lo, double hi, int max_doublings = 200) {
    if (!(hi > lo)) throw bracket_error("expand_upper: need hi > lo");
    for (int i = 0; i < max_doublings; ++i) {
        if (f(hi) > 0.0) return hi;
        const double width = hi - lo;
        hi = lo + 2.0 * width;
    }
    throw bracket_error("expand_upper: bracket expansion failed");
}

}  // namespace born::roots
