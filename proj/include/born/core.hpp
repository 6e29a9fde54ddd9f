#pragma once

// Born oscillator: Hamiltonians, scaled coordinates and level-set geometry.
//
// All state is held in scaled coordinates qt = eps*q, pt = eps*p. The energy
// E of the Born Hamiltonian fixes the level constant L = (1 + eps^2 E)^2,
// which is the value of (1 + qt^2)(1 + pt^2) along the orbit.

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace born {

/// Raised when an argument lies outside the domain of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Nonlinearity scale. Always strictly positive and finite.
class OscParams {
public:
    explicit OscParams(double epsilon) : epsilon_(epsilon) {
        if (!(epsilon > 0.0) || !std::isfinite(epsilon))
            throw domain_error("epsilon must be positive and finite");
    }

    double epsilon() const noexcept { return epsilon_; }
    double eps2() const noexcept { return epsilon_ * epsilon_; }

private:
    double epsilon_;
};

/// Phase point in scaled coordinates.
struct ScaledPhasePoint {
    double qt = 0.0;
    double pt = 0.0;

    double q(const OscParams& params) const noexcept { return qt / params.epsilon(); }
    double p(const OscParams& params) const noexcept { return pt / params.epsilon(); }

    static ScaledPhasePoint from_unscaled(double q, double p, const OscParams& params) noexcept {
        return {params.epsilon() * q, params.epsilon() * p};
    }

    friend bool operator==(const ScaledPhasePoint&, const ScaledPhasePoint&) = default;
};

/// Canonical log-cosh coordinates: qt = sinh(Q), pt = sinh(P).
struct LogCoshPoint {
    double Q = 0.0;
    double P = 0.0;

    friend bool operator==(const LogCoshPoint&, const LogCoshPoint&) = default;
};

enum class EnergyKind { born, logcosh };

struct EnergyValue {
    double value = 0.0;
    EnergyKind kind = EnergyKind::born;

    static EnergyValue born(double v) {
        if (!(v >= 0.0)) throw domain_error("energy must be non-negative");
        return {v, EnergyKind::born};
    }
    static EnergyValue logcosh(double v) {
        if (!(v >= 0.0)) throw domain_error("energy must be non-negative");
        return {v, EnergyKind::logcosh};
    }
};

/// log(cosh x) without overflow: |x| + log1p(exp(-2|x|)) - log 2.
inline double log_cosh(double x) noexcept {
    const double a = std::fabs(x);
    if (a < 1.0) {
        const double s = std::sinh(0.5 * a);
        return std::log1p(2.0 * s * s);
    }
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

/// (1/eps^2) [sqrt((1+qt^2)(1+pt^2)) - 1], evaluated without cancellation
/// near the origin.
inline double born_energy(const ScaledPhasePoint& s, const OscParams& params) noexcept {
    const double q2 = s.qt * s.qt;
    const double p2 = s.pt * s.pt;
    // (1+q2)(1+p2) - 1 = q2 + p2 + q2*p2
    const double excess = q2 + p2 + q2 * p2;
    // sqrt(1+x) - 1 = x / (sqrt(1+x) + 1)
    return excess / (std::sqrt(1.0 + excess) + 1.0) / params.eps2();
}

inline EnergyValue born_hamiltonian(const ScaledPhasePoint& s, const OscParams& params) {
    return {born_energy(s, params), EnergyKind::born};
}

/// Level constant L = (1 + eps^2 E)^2.
inline double level_constant(double energy, const OscParams& params) noexcept {
    const double g = 1.0 + params.eps2() * energy;
    return g * g;
}

/// Turning point qt_M of the level set, from 1 + qt_M^2 = (1 + eps^2 E)^2.
inline double level_qmax(const EnergyValue& E, const OscParams& params) {
    if (E.kind != EnergyKind::born)
        throw domain_error("level_qmax requires a Born energy");
    const double x = params.eps2() * E.value;
    // (1+x)^2 - 1 = x (2 + x)
    return std::sqrt(x * (2.0 + x));
}

/// Inverse of level_qmax: the Born energy whose orbit turns at qt_M.
inline double energy_from_qmax(double qmax, const OscParams& params) noexcept {
    const double q2 = qmax * qmax;
    return q2 / (std::sqrt(1.0 + q2) + 1.0) / params.eps2();
}

inline EnergyValue logcosh_hamiltonian(const LogCoshPoint& s) noexcept {
    return {log_cosh(s.P) + log_cosh(s.Q), EnergyKind::logcosh};
}

inline LogCoshPoint to_logcosh(const ScaledPhasePoint& s) noexcept {
    return {std::asinh(s.qt), std::asinh(s.pt)};
}

inline ScaledPhasePoint from_logcosh(const LogCoshPoint& s) noexcept {
    return {std::sinh(s.Q), std::sinh(s.P)};
}

/// Equilibrium of H_B - F q. Exists only for |eps F| < 1, where it sits at
/// qt / sqrt(1 + qt^2) = eps F, pt = 0.
inline std::optional<ScaledPhasePoint> forced_stationary_point(double F, const OscParams& params) {
    if (!std::isfinite(F)) throw domain_error("force must be finite");
    const double f = params.epsilon() * F;
    if (!(std::fabs(f) < 1.0)) return std::nullopt;
    return ScaledPhasePoint{f / std::sqrt((1.0 - f) * (1.0 + f)), 0.0};
}

}  // namespace born
