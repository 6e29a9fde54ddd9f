#pragma once

// Complete elliptic integrals by the arithmetic-geometric mean.
//
// PARAMETER CONVENTION: every function here takes the parameter m, not the
// modulus k (m = k^2):
//
//     K(m) = int_0^{pi/2} (1 - m sin^2 t)^{-1/2} dt
//     E(m) = int_0^{pi/2} (1 - m sin^2 t)^{+1/2} dt
//
// Negative parameters are supported through the imaginary-modulus
// transformation K(-x) = K(x/(1+x)) / sqrt(1+x), E(-x) = sqrt(1+x) E(x/(1+x)).

#include <cmath>
#include <numbers>

#include "born/core.hpp"

namespace born::elliptic {

struct KE {
    double K;
    double E;
    double KminusE;  // K - E without cancellation (m >= 0 only)
};

namespace detail {

// AGM started from a0 = 1, b0 = complementary (= sqrt(1-m)). Passing b0
// directly avoids forming 1 - m when m is close to 1.
inline KE agm_pair(double m, double b0) {
    double a = 1.0;
    double b = b0;
    double c2 = m;  // c_0^2
    double weight = 0.5;
    double sum = weight * c2;
    for (int it = 0; it < 64; ++it) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        const double c = 0.5 * (a - b);
        weight *= 2.0;
        sum += weight * c * c;
        a = an;
        b = bn;
        if (std::fabs(a - b) <= 1e-15 * a) break;
    }
    const double K = std::numbers::pi / (2.0 * a);
    return {K, K * (1.0 - sum), K * sum};
}

}  // namespace detail

/// K(m) and E(m) for m < 1.
inline KE complete(double m) {
    if (!(m < 1.0)) throw domain_error("complete elliptic integrals need m < 1");
    if (m >= 0.0) return detail::agm_pair(m, std::sqrt(1.0 - m));
    const double x = -m;
    const double mt = x / (1.0 + x);
    const double s = std::sqrt(1.0 + x);
    const KE r = detail::agm_pair(mt, 1.0 / s);
    return {r.K / s, r.E * s, r.K / s - r.E * s};
}

inline double ellint_k(double m) { return complete(m).K; }
inline double ellint_e(double m) { return complete(m).E; }

/// K(m), E(m) given the complementary value kc = sqrt(1 - m) formed by the
/// caller without cancellation (m close to 1).
inline KE complete_with_complement(double m, double kc) {
    if (!(m <= 1.0) || !(kc > 0.0)) throw domain_error("complete elliptic integrals need m < 1");
    return detail::agm_pair(m, kc);
}

/// K and E at m = -a^2, with the complementary value 1/sqrt(1+a^2) formed
/// directly so large a does not lose precision.
inline KE complete_negative_square(double a) {
    const double a2 = a * a;
    const double s = std::sqrt(1.0 + a2);
    const KE r = detail::agm_pair(a2 / (1.0 + a2), 1.0 / s);
    return {r.K / s, r.E * s, r.K / s - r.E * s};
}

}  // namespace born::elliptic
