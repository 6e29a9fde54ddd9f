#pragma once

// Phase-space area (Weyl counting) estimates for the Born and log-cosh
// Hamiltonians, their large-energy closed forms, and the comparison of the
// resulting eigenvalue law with the non-trivial zeros of the Riemann zeta
// function.
//
// Areas are measured in scaled variables, where the quantization condition
// reads area(E_n) = 2 pi eps^2 (n + 1/2).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <limits>
#include <locale>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "born/core.hpp"
#include "born/elliptic.hpp"
#include "born/quadrature.hpp"
#include "born/roots.hpp"

namespace born::semiclassical {

enum class AreaMethod { quadrature, elliptic, asymptotic };

inline const char* to_string(AreaMethod m) {
    switch (m) {
        case AreaMethod::quadrature: return "quadrature";
        case AreaMethod::elliptic: return "elliptic";
        case AreaMethod::asymptotic: return "asymptotic";
    }
    return "?";
}

struct AreaResult {
    EnergyValue energy;
    double area;
    AreaMethod method;
};

struct WeylEstimate {
    int n = 0;
    double epsilon = 0.0;
    double energy = 0.0;
    AreaMethod method = AreaMethod::quadrature;
    double residual = 0.0;        // area(energy) - 2 pi eps^2 (n + 1/2)
    bool pre_asymptotic = false;  // closed form used outside its regime
};

/// Raised when the elliptic closed form disagrees with quadrature.
class convention_mismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline double quantized_area(int n, const OscParams& params) {
    if (n < 0) throw domain_error("level index must be non-negative");
    return 2.0 * std::numbers::pi * params.eps2() * (n + 0.5);
}

// ---------------------------------------------------------------- Born ----

/// Area of {(1+qt^2)(1+pt^2) <= L} as 8 int_0^{q*} (pt(q) - q) dq, with
/// pt(q) = sqrt((qt_M^2 - q^2) / (1 + q^2)) and q* = eps sqrt(E) the point
/// where the boundary meets the diagonal.
inline AreaResult born_area_quadrature(const EnergyValue& E, const OscParams& params, double tol) {
    if (!(E.value > 0.0)) throw domain_error("area requires positive energy");
    const double qm = level_qmax(E, params);
    const double qm2 = qm * qm;
    const double qstar = params.epsilon() * std::sqrt(E.value);
    // short intervals are stretched to unit length; the GK error estimate misbehaves below that
    const double s = std::min(qstar, 1.0);
    auto f = [qm2, s](double u) {
        const double q = s * u;
        const double q2 = q * q;
        return std::sqrt(std::max(qm2 - q2, 0.0) / (1.0 + q2)) - q;
    };
    const double I = quad::integrate(f, 0.0, qstar / s, tol).value;
    return {E, 8.0 * s * I, AreaMethod::quadrature};
}

/// Closed form 4 [(1 + a^2) K(-a^2) - E(-a^2)], a = qt_M (parameter
/// convention). Evaluated as 4 sqrt(1+a^2) [K(m) - E(m)] with m = a^2/(1+a^2),
/// where K - E comes from the AGM sum without cancellation.
inline double born_area_elliptic_value(double qmax) {
    const double a2 = qmax * qmax;
    const double g = std::sqrt(1.0 + a2);
    const double m = a2 / (1.0 + a2);
    const elliptic::KE ke = elliptic::complete_with_complement(m, 1.0 / g);
    return 4.0 * g * ke.KminusE;
}

/// Elliptic closed form, guarded by a quadrature cross-check: a relative
/// disagreement above 1e-6 raises convention_mismatch instead of returning.
inline AreaResult born_area_elliptic(const EnergyValue& E, const OscParams& params) {
    if (!(E.value > 0.0)) throw domain_error("area requires positive energy");
    const double a = level_qmax(E, params);
    const double closed = born_area_elliptic_value(a);
    const double check = born_area_quadrature(E, params, 1e-10).area;
    if (std::fabs(closed - check) > 1e-6 * check)
        throw convention_mismatch("elliptic area disagrees with quadrature");
    return {E, closed, AreaMethod::elliptic};
}

/// x (log x - 1) with x = 4 qt_M: the large-amplitude area.
inline double born_area_asymptotic_value(double qmax) {
    const double x = 4.0 * qmax;
    return x * (std::log(x) - 1.0);
}

inline AreaResult born_area_asymptotic(const EnergyValue& E, const OscParams& params) {
    if (!(E.value > 0.0)) throw domain_error("area requires positive energy");
    return {E, born_area_asymptotic_value(level_qmax(E, params)), AreaMethod::asymptotic};
}

inline AreaResult born_area(const EnergyValue& E, const OscParams& params, AreaMethod method, double tol) {
    switch (method) {
        case AreaMethod::quadrature: return born_area_quadrature(E, params, tol);
        case AreaMethod::elliptic: return born_area_elliptic(E, params);
        case AreaMethod::asymptotic: return born_area_asymptotic(E, params);
    }
    throw domain_error("unknown area method");
}

namespace detail {

// Root of x (log x - 1) = r on the branch x > e (r > 0).
inline double solve_xlogx(double r) {
    if (!(r > 0.0)) throw domain_error("x(log x - 1) = r needs r > 0");
    auto fdf = [r](double x) { return std::pair<double, double>{x * (std::log(x) - 1.0) - r, std::log(x)}; };
    const double lo = std::numbers::e;
    double hi = std::max(2.0 * lo, 2.0 * r + 4.0);
    while (fdf(hi).first <= 0.0) hi *= 2.0;
    const double x0 = r / std::log(std::max(r, 3.0));
    return roots::newton_bisect(fdf, lo, hi, x0, 1e-15).x;
}

}  // namespace detail

/// Solve area(E) = 2 pi eps^2 (n + 1/2) for E with the chosen area method.
inline WeylEstimate weyl_solve_born(int n, const OscParams& params, AreaMethod method, double tol) {
    const double target = quantized_area(n, params);
    WeylEstimate est;
    est.n = n;
    est.epsilon = params.epsilon();
    est.method = method;

    if (method == AreaMethod::asymptotic) {
        // The closed form is monotone only on x = 4 qt_M > e; solve in x.
        const double x = detail::solve_xlogx(target);
        est.energy = energy_from_qmax(0.25 * x, params);
        est.residual = born_area_asymptotic_value(0.25 * x) - target;
        est.pre_asymptotic = x < 10.0;
        return est;
    }

    const double qtol = std::min(1e-12, 0.1 * tol);
    auto g = [&](double e) {
        if (e <= 0.0) return -target;
        return born_area(EnergyValue::born(e), params, method, qtol).area - target;
    };
    const double hi = roots::expand_upper(g, 0.0, n + 1.0);
    const double e = roots::brent(g, 0.0, hi, 1e-12 * std::max(1.0, hi)).x;
    est.energy = e;
    est.residual = g(e);
    return est;
}

/// Large-n law 4 qt_n [log(4 qt_n) - 1] = 2 pi eps^2 (n + 1/2) solved by
/// safeguarded Newton from x0 = r / log(max(r, 3)), with E_n = qt_n / eps^2.
inline WeylEstimate asymptotic_born(int n, const OscParams& params) {
    const double r = quantized_area(n, params);
    const double x = detail::solve_xlogx(r);
    WeylEstimate est;
    est.n = n;
    est.epsilon = params.epsilon();
    est.method = AreaMethod::asymptotic;
    est.energy = 0.25 * x / params.eps2();
    est.residual = x * (std::log(x) - 1.0) - r;
    est.pre_asymptotic = x < 10.0;
    return est;
}

// ----------------------------------------------------------- zeta zeros ----

/// eps^2 = 1/(8 pi) makes the right-hand side of the large-n law (n + 1/2)/4.
inline OscParams zeta_params() { return OscParams(std::sqrt(1.0 / (8.0 * std::numbers::pi))); }

/// Estimate of the imaginary part of the N-th zeta zero: with eps^2 = 1/(8 pi)
/// and n = 4N - 6, y_N = 8 pi qt_n. Equivalent to 2 pi x with
/// x (log x - 1) = N - 11/8. Defined for N >= 3.
inline double zeta_zero_estimate(int N) {
    if (N < 3) throw domain_error("zeta_zero_estimate needs N >= 3");
    const OscParams params = zeta_params();
    const WeylEstimate est = asymptotic_born(4 * N - 6, params);
    const double qt = est.energy * params.eps2();
    return 8.0 * std::numbers::pi * qt;
}

/// Imaginary parts y_N, 1-indexed (values[0] is y_1).
struct ZerosTable {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    double at(int N) const {
        if (N < 1 || static_cast<std::size_t>(N) > values.size()) throw std::out_of_range("zero index out of range");
        return values[static_cast<std::size_t>(N - 1)];
    }
};

class zeros_parse_error : public std::runtime_error {
public:
    zeros_parse_error(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// One decimal value per line; surrounding whitespace ignored; blank lines
/// and lines starting with '#' skipped; values strictly increasing.
inline ZerosTable parse_zeros(std::istream& in, const std::string& source = "<stream>") {
    ZerosTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r\n");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r\n");
        const std::string tok = line.substr(first, last - first + 1);
        if (tok.front() == '#') continue;
        std::istringstream ss(tok);
        ss.imbue(std::locale::classic());
        double v = 0.0;
        if (!(ss >> v) || !ss.eof() || !std::isfinite(v))
            throw zeros_parse_error(source + ":" + std::to_string(lineno) + ": not a decimal value: '" + tok + "'",
                                    lineno);
        if (!(v > 0.0))
            throw zeros_parse_error(source + ":" + std::to_string(lineno) + ": value must be positive", lineno);
        if (!table.values.empty() && !(v > table.values.back()))
            throw zeros_parse_error(source + ":" + std::to_string(lineno) + ": values must be strictly increasing (entry " +
                                        std::to_string(table.values.size() + 1) + ")",
                                    lineno);
        table.values.push_back(v);
    }
    return table;
}

inline ZerosTable load_zeros(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw zeros_parse_error("cannot open zeros file: " + path, 0);
    return parse_zeros(in, path);
}

struct ZeroComparison {
    int N;
    double y_true;
    double y_est;
    double rel_err;       // |y_est - y_true| / y_true
    double smooth_count;  // (y/2pi)(log(y/2pi) - 1) at y_true
    double smooth_target; // N - 7/8 - S with S = 1/2
};

inline std::vector<ZeroComparison> compare_zeros(const ZerosTable& table, int N_from, int N_to) {
    if (N_from < 3) throw domain_error("compare_zeros needs N_from >= 3");
    if (N_to < N_from) throw domain_error("compare_zeros: empty range");
    if (static_cast<std::size_t>(N_to) > table.size())
        throw std::out_of_range("zeros table has " + std::to_string(table.size()) + " entries, need " +
                                std::to_string(N_to));
    std::vector<ZeroComparison> rows;
    rows.reserve(static_cast<std::size_t>(N_to - N_from + 1));
    for (int N = N_from; N <= N_to; ++N) {
        const double y = table.at(N);
        const double est = zeta_zero_estimate(N);
        const double u = y / (2.0 * std::numbers::pi);
        rows.push_back({N, y, est, std::fabs(est - y) / y, u * (std::log(u) - 1.0), N - 0.875 - 0.5});
    }
    return rows;
}

// ------------------------------------------------------------ log-cosh ----

namespace detail {

// acosh(exp(x)) for x >= 0.
inline double acosh_exp(double x) {
    if (x < 30.0) {
        const double delta = std::expm1(x);
        return std::log1p(delta + std::sqrt(delta * (2.0 + delta)));
    }
    return x + std::log1p(std::sqrt(-std::expm1(-2.0 * x)));
}

}  // namespace detail

/// Area of {log(cosh P cosh Q) <= E} as 8 int_0^{Qbar} (P(Q) - Q) dQ with
/// P(Q) = acosh(e^E / cosh Q), Qbar = acosh(e^{E/2}).
inline AreaResult logcosh_area_quadrature(const EnergyValue& E, double tol) {
    if (!(E.value > 0.0)) throw domain_error("area requires positive energy");
    const double e = E.value;
    const double qbar = detail::acosh_exp(0.5 * e);
    const double s = std::min(qbar, 1.0);
    auto f = [e, s](double u) {
        const double Q = s * u;
        return detail::acosh_exp(std::max(0.0, e - log_cosh(Q))) - Q;
    };
    const double I = quad::integrate(f, 0.0, qbar / s, tol).value;
    return {EnergyValue::logcosh(e), 8.0 * s * I, AreaMethod::quadrature};
}

/// Large-E form of the same area: 8 [(Q_n + log 2)^2 / 4 - pi^2 / 24] with
/// Q_n = acosh(e^E).
inline AreaResult logcosh_area_asymptotic(const EnergyValue& E) {
    const double qn = detail::acosh_exp(E.value);
    const double s = qn + std::numbers::ln2;
    return {E, 8.0 * (0.25 * s * s - std::numbers::pi * std::numbers::pi / 24.0), AreaMethod::asymptotic};
}

/// int_0^inf log(1 + e^{-2Q}) dQ, which equals pi^2/24.
inline double logcosh_tail_integral(double tol = 1e-14) {
    return quad::integrate([](double Q) { return std::log1p(std::exp(-2.0 * Q)); }, 0.0,
                           std::numeric_limits<double>::infinity(), tol)
        .value;
}

/// Solve 8 I(E) = 2 pi eps^2 (n + 1/2) by quadrature.
inline WeylEstimate logcosh_solve(int n, const OscParams& params, double tol) {
    const double target = quantized_area(n, params);
    const double qtol = std::min(1e-12, 0.1 * tol);
    auto g = [&](double e) {
        if (e <= 0.0) return -target;
        return logcosh_area_quadrature(EnergyValue::logcosh(e), qtol).area - target;
    };
    const double hi = roots::expand_upper(g, 0.0, 1.0);
    const double e = roots::brent(g, 0.0, hi, 1e-12 * std::max(1.0, hi)).x;
    WeylEstimate est;
    est.n = n;
    est.epsilon = params.epsilon();
    est.energy = e;
    est.method = AreaMethod::quadrature;
    est.residual = g(e);
    return est;
}

/// E_n = -2 log 2 + sqrt(pi^2/6 + pi eps^2 (n + 1/2)). Flagged pre-asymptotic
/// when the value is not positive (small n).
inline WeylEstimate logcosh_asymptotic(int n, const OscParams& params) {
    if (n < 0) throw domain_error("level index must be non-negative");
    const double pi = std::numbers::pi;
    const double e = -2.0 * std::numbers::ln2 + std::sqrt(pi * pi / 6.0 + pi * params.eps2() * (n + 0.5));
    WeylEstimate est;
    est.n = n;
    est.epsilon = params.epsilon();
    est.energy = e;
    est.method = AreaMethod::asymptotic;
    est.pre_asymptotic = !(e > 0.0);
    est.residual = est.pre_asymptotic ? 0.0 : logcosh_area_asymptotic(EnergyValue{e, EnergyKind::logcosh}).area -
                                                  quantized_area(n, params);
    return est;
}

}  // namespace born::semiclassical
