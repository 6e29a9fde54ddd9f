#pragma once

// Gauss-Laguerre rule for int_0^inf f(t) dt with the e^{-t} weight folded
// into the returned weights (W_i = w_i e^{t_i}), so the rule applies to
// integrands that already carry their own exponential decay.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "born/tridiagonal.hpp"

namespace born::quad {

struct LaguerreRule {
    std::vector<double> nodes;
    std::vector<double> weights;  // w_i * exp(t_i)
};

namespace detail {

// Laguerre functions phi_k(t) = e^{-t/2} L_k(t), bounded by 1 on t >= 0.
inline void laguerre_functions(double t, std::size_t count, std::vector<double>& phi) {
    phi.assign(count, 0.0);
    if (count == 0) return;
    phi[0] = std::exp(-0.5 * t);
    if (count > 1) phi[1] = (1.0 - t) * phi[0];
    for (std::size_t k = 1; k + 1 < count; ++k) {
        const double kd = static_cast<double>(k);
        phi[k + 1] = ((2.0 * kd + 1.0 - t) * phi[k] - kd * phi[k - 1]) / (kd + 1.0);
    }
}

}  // namespace detail

/// n-point rule. Nodes come from the Jacobi matrix (diagonal 2k+1,
/// off-diagonal k) and are polished by Newton on L_n; weights from the
/// Christoffel sum W_i = 1 / sum_{k<n} phi_k(t_i)^2.
inline LaguerreRule gauss_laguerre(std::size_t n) {
    if (n == 0) throw std::invalid_argument("gauss_laguerre: need at least one node");
    if (n > 600) throw std::invalid_argument("gauss_laguerre: node count too large for double range");
    std::vector<double> diag(n), off(n - 1);
    for (std::size_t k = 0; k < n; ++k) diag[k] = 2.0 * static_cast<double>(k) + 1.0;
    for (std::size_t k = 1; k < n; ++k) off[k - 1] = static_cast<double>(k);

    LaguerreRule rule;
    rule.nodes = tridiag::eigenvalues(diag, off, 1e-15);
    rule.weights.resize(n);

    std::vector<double> phi;
    const double nd = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        double t = rule.nodes[i];
        for (int it = 0; it < 3; ++it) {
            detail::laguerre_functions(t, n + 1, phi);
            const double denom = nd * (phi[n] - phi[n - 1]);
            if (denom == 0.0) break;
            const double step = phi[n] * t / denom;
            if (!std::isfinite(step)) break;
            t -= step;
            if (std::fabs(step) <= 1e-16 * t) break;
        }
        rule.nodes[i] = t;
        detail::laguerre_functions(t, n, phi);
        double s = 0.0;
        for (double v : phi) s += v * v;
        rule.weights[i] = 1.0 / s;
    }
    return rule;
}

}  // namespace born::quad
