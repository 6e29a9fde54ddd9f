#pragma once

// Adaptive 1-D quadrature (Gauss-Kronrod 61 points, Boost.Math underneath).

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace born::quad {

struct Integral {
    double value;
    double error_estimate;
};

/// int_a^b f, either limit may be infinite. Throws when the error estimate
/// stays above rel_tol * max(|value|, L1 norm * 1e-3) after full refinement.
template <class F>
Integral integrate(F&& f, double a, double b, double rel_tol, unsigned max_depth = 25) {
    double err = 0.0;
    double l1 = 0.0;
    const double v =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, rel_tol, &err, &l1);
    if (!std::isfinite(v) || err > rel_tol * std::max(std::fabs(v), 1e-3 * l1) * 10.0)
        throw std::runtime_error("quadrature did not reach tolerance (error estimate " + std::to_string(err) + ")");
    return {v, err};
}

}  // namespace born::quad
