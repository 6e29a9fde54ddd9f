#pragma once

// Classical dynamics of the Born oscillator: equations of motion, adaptive
// integration with an energy-drift contract, and the oscillation period by
// three independent routes (event detection on the integrated orbit, the
// complete elliptic integral, and the large-amplitude matched formula).

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "born/core.hpp"
#include "born/elliptic.hpp"
#include "born/ode.hpp"
#include "born/roots.hpp"

namespace born::classical {

using ode::integration_error;

struct Derivative {
    double dqt;
    double dpt;
};

/// Right-hand side of the scaled equations of motion with a constant force F
/// (F = 0 gives the free oscillator).
inline Derivative eom_rhs(const ScaledPhasePoint& s, const OscParams& params, double F = 0.0) noexcept {
    const double a = 1.0 + s.qt * s.qt;
    const double b = 1.0 + s.pt * s.pt;
    const double r = std::sqrt(a / b);
    return {s.pt * r, -s.qt / r + params.epsilon() * F};
}

/// Time-sampled orbit. `energy0` is the conserved Hamiltonian at t = 0
/// (H_B - F q for the forced Born oscillator, log cosh P + log cosh Q for the
/// log-cosh flow) and `max_energy_drift` the largest |H(t) - H(0)| / max(|H(0)|, 1)
/// over every accepted step and every sample.
template <class Point>
struct BasicTrajectory {
    std::vector<double> times;
    std::vector<Point> states;
    double energy0 = 0.0;
    double max_energy_drift = 0.0;
    double tol = 0.0;
};

using Trajectory = BasicTrajectory<ScaledPhasePoint>;
using LogCoshTrajectory = BasicTrajectory<LogCoshPoint>;

enum class PeriodMethod { numeric, elliptic, asymptotic };

struct PeriodResult {
    double period;
    PeriodMethod method;
    EnergyValue energy;
};

inline const char* to_string(PeriodMethod m) {
    switch (m) {
        case PeriodMethod::numeric: return "numeric";
        case PeriodMethod::elliptic: return "elliptic";
        case PeriodMethod::asymptotic: return "asymptotic";
    }
    return "?";
}

namespace detail {

inline void check_tol(double tol) {
    if (!(tol >= 1e-13 && tol <= 1e-3)) throw domain_error("tolerance must lie in [1e-13, 1e-3]");
}

inline double total_energy(const ScaledPhasePoint& s, const OscParams& params, double F) {
    return born_energy(s, params) - F * s.qt / params.epsilon();
}

// Orbit amplitude used to scale the local error: absolute control for small
// orbits, control relative to sqrt(1 + y^2) (i.e. absolute in asinh y) for
// large ones.
inline double born_amplitude(const ScaledPhasePoint& s0, const OscParams& params, double F) {
    double a = std::max({std::fabs(s0.qt), std::fabs(s0.pt), level_qmax(born_hamiltonian(s0, params), params)});
    if (F != 0.0) {
        if (auto eq = forced_stationary_point(F, params)) a += std::fabs(eq->qt);
        a = std::max(a, std::fabs(params.epsilon() * F));
    }
    return std::max(a, 1e-200);
}

// Integrates with internal tolerance tightened until the recorded energy
// drift honours `tol`.
template <class Point, class Rhs, class Scale, class Energy, class ToArr, class FromArr>
BasicTrajectory<Point> drift_controlled(const Point& s0, double t_end, double tol, std::span<const double> samples,
                                        Rhs&& rhs, Scale&& scale, Energy&& energy, ToArr&& to_arr,
                                        FromArr&& from_arr) {
    check_tol(tol);
    if (!(t_end > 0.0)) throw domain_error("t_end must be positive");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i] >= 0.0 && samples[i] <= t_end) || (i > 0 && !(samples[i] > samples[i - 1])))
            throw domain_error("sample times must be increasing and inside [0, t_end]");
    }

    const double e0 = energy(s0);
    const double denom = std::max(std::fabs(e0), 1.0);

    double inner = tol;
    for (int attempt = 0; attempt < 5; ++attempt) {
        BasicTrajectory<Point> traj;
        traj.energy0 = e0;
        traj.tol = tol;
        traj.times.push_back(0.0);
        traj.states.push_back(s0);
        double drift = 0.0;
        std::size_t next_sample = (!samples.empty() && samples.front() == 0.0) ? 1 : 0;

        auto record = [&](double t, const Point& p) {
            drift = std::max(drift, std::fabs(energy(p) - e0) / denom);
            traj.times.push_back(t);
            traj.states.push_back(p);
        };

        ode::Options opt;
        opt.tol = inner;
        ode::integrate_adaptive<2>(rhs, scale, to_arr(s0), 0.0, t_end, opt, [&](const ode::DenseStep<2>& step) {
            const Point end = from_arr(step.y1);
            drift = std::max(drift, std::fabs(energy(end) - e0) / denom);
            if (samples.empty()) {
                record(step.t1(), end);
            } else {
                while (next_sample < samples.size() && samples[next_sample] <= step.t1()) {
                    const double ts = samples[next_sample++];
                    record(ts, ts == step.t1() ? end : from_arr(step(ts)));
                }
            }
            return true;
        });
        // Accumulated rounding can leave the last sample a hair beyond the final step.
        while (next_sample < samples.size()) {
            const double ts = samples[next_sample++];
            record(ts, traj.states.back());
        }

        traj.max_energy_drift = drift;
        if (drift <= tol) return traj;
        inner = std::max(inner * 0.1, 1e-15);
    }
    throw integration_error("energy drift exceeds the requested tolerance", t_end);
}

}  // namespace detail

/// Integrate the Born oscillator (optionally forced) from s0 over [0, t_end].
///
/// With no sample times every accepted step is recorded; otherwise the dense
/// output is evaluated at the given times (t = 0 is always the first entry).
inline Trajectory integrate(const ScaledPhasePoint& s0, const OscParams& params, double t_end, double tol,
                            double F = 0.0, std::span<const double> sample_times = {}) {
    const double amp = detail::born_amplitude(s0, params, F);
    auto rhs = [&](const ode::State<2>& y) {
        const Derivative d = eom_rhs({y[0], y[1]}, params, F);
        return ode::State<2>{d.dqt, d.dpt};
    };
    auto scale = [amp](const ode::State<2>& mag) {
        return ode::State<2>{std::min(amp, std::sqrt(1.0 + mag[0] * mag[0])),
                             std::min(amp, std::sqrt(1.0 + mag[1] * mag[1]))};
    };
    auto energy = [&](const ScaledPhasePoint& s) { return detail::total_energy(s, params, F); };
    auto to_arr = [](const ScaledPhasePoint& s) { return ode::State<2>{s.qt, s.pt}; };
    auto from_arr = [](const ode::State<2>& y) { return ScaledPhasePoint{y[0], y[1]}; };
    return detail::drift_controlled(s0, t_end, tol, sample_times, rhs, scale, energy, to_arr, from_arr);
}

/// Flow of the log-cosh Hamiltonian: dQ/dt = tanh P, dP/dt = -tanh Q.
inline LogCoshTrajectory integrate_logcosh(const LogCoshPoint& s0, double t_end, double tol,
                                           std::span<const double> sample_times = {}) {
    const double h0 = logcosh_hamiltonian(s0).value;
    // Turning point of the level set: log cosh Q = H.
    const double qturn = h0 + std::log1p(std::sqrt(-std::expm1(-2.0 * h0)));
    const double amp = std::max({std::fabs(s0.Q), std::fabs(s0.P), qturn, 1e-200});
    auto rhs = [](const ode::State<2>& y) { return ode::State<2>{std::tanh(y[1]), -std::tanh(y[0])}; };
    auto scale = [amp](const ode::State<2>&) {
        const double s = std::min(amp, 1.0);
        return ode::State<2>{s, s};
    };
    auto energy = [](const LogCoshPoint& s) { return logcosh_hamiltonian(s).value; };
    auto to_arr = [](const LogCoshPoint& s) { return ode::State<2>{s.Q, s.P}; };
    auto from_arr = [](const ode::State<2>& y) { return LogCoshPoint{y[0], y[1]}; };
    return detail::drift_controlled(s0, t_end, tol, sample_times, rhs, scale, energy, to_arr, from_arr);
}

/// Period from the complete elliptic integral of the first kind:
/// T = 4 K(m), m = qt_M^2 / (1 + qt_M^2) (parameter convention).
inline PeriodResult period_elliptic(const EnergyValue& E, const OscParams& params) {
    if (!(E.value > 0.0)) throw domain_error("period requires positive energy");
    const double qm = level_qmax(E, params);
    const double g = std::sqrt(1.0 + qm * qm);
    const double m = (qm / g) * (qm / g);
    const double T = 4.0 * elliptic::complete_with_complement(m, 1.0 / g).K;
    return {T, PeriodMethod::elliptic, E};
}

/// Large-amplitude period T = 4 asinh(2 qt_M).
inline PeriodResult period_asymptotic(double qmax) {
    if (!(qmax > 0.0)) throw domain_error("period_asymptotic requires qt_M > 0");
    return {4.0 * std::asinh(2.0 * qmax), PeriodMethod::asymptotic, EnergyValue{}};
}

/// Period by integrating from the turning point (qt_M, 0) and locating the
/// first downward crossing of pt = 0 after the orbit has swept pt > 0, which
/// closes one full oscillation. The crossing is refined on the dense output.
inline PeriodResult period_numeric(const EnergyValue& E, const OscParams& params, double tol) {
    detail::check_tol(tol);
    if (!(E.value > 0.0)) throw domain_error("period requires positive energy");
    const double qm = level_qmax(E, params);
    const double amp = std::max(qm, 1e-200);
    auto rhs = [&](const ode::State<2>& y) {
        const Derivative d = eom_rhs({y[0], y[1]}, params);
        return ode::State<2>{d.dqt, d.dpt};
    };
    auto scale = [amp](const ode::State<2>& mag) {
        return ode::State<2>{std::min(amp, std::sqrt(1.0 + mag[0] * mag[0])),
                             std::min(amp, std::sqrt(1.0 + mag[1] * mag[1]))};
    };
    const double t_bound = 2.0 * (2.0 * std::numbers::pi + 4.0 * std::asinh(2.0 * qm)) + 1.0;

    double period = -1.0;
    ode::Options opt;
    opt.tol = tol;
    ode::integrate_adaptive<2>(rhs, scale, ode::State<2>{qm, 0.0}, 0.0, t_bound, opt,
                               [&](const ode::DenseStep<2>& step) {
                                   if (step.y0[1] > 0.0 && step.y1[1] <= 0.0) {
                                       auto p_of_t = [&](double t) { return step(t)[1]; };
                                       const double xtol = 1e-12 * std::max(1.0, step.t1());
                                       period = roots::brent(p_of_t, step.t0, step.t1(), xtol).x;
                                       return false;
                                   }
                                   return true;
                               });
    if (period < 0.0) throw integration_error("no return to the turning point detected", t_bound);
    return {period, PeriodMethod::numeric, E};
}

/// Large-amplitude arc dominated by qt: (qt_M / cosh t, -sinh t). Accurate
/// for qt_M >> 1 (it degrades below qt_M of about 10). The pt-dominated arc
/// follows from the swap symmetry, (sinh(t + T/4), qt_M / cosh(t + T/4)).
inline ScaledPhasePoint matched_segment(double qmax, double t) noexcept {
    return {qmax / std::cosh(t), -std::sinh(t)};
}

}  // namespace born::classical
