#pragma once

// Dormand-Prince 5(4) with Hairer's fourth-order continuous extension.
//
// The driver is generic over the state dimension. The caller supplies the
// right-hand side, a per-component error scale and an observer that sees
// every accepted step as a DenseStep (so events can be located on the
// interpolant). Returning false from the observer stops the integration.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace born::ode {

template <std::size_t N>
using State = std::array<double, N>;

/// Step-size underflow or step-budget exhaustion. Carries the time reached.
class integration_error : public std::runtime_error {
public:
    integration_error(const std::string& what, double t_reached)
        : std::runtime_error(what + " (t = " + std::to_string(t_reached) + ")"), t_reached_(t_reached) {}

    double t_reached() const noexcept { return t_reached_; }

private:
    double t_reached_;
};

template <std::size_t N>
struct DenseStep {
    double t0 = 0.0;
    double h = 0.0;
    State<N> y0{};
    State<N> y1{};
    std::array<State<N>, 5> rcont{};

    double t1() const noexcept { return t0 + h; }

    State<N> operator()(double t) const noexcept {
        const double th = (t - t0) / h;
        const double th1 = 1.0 - th;
        State<N> y;
        for (std::size_t i = 0; i < N; ++i)
            y[i] = rcont[0][i] +
                   th * (rcont[1][i] + th1 * (rcont[2][i] + th * (rcont[3][i] + th1 * rcont[4][i])));
        return y;
    }
};

struct Stats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    double t_final = 0.0;
    bool stopped_by_observer = false;
};

struct Options {
    double tol = 1e-10;
    double h_init = 0.0;  // 0: automatic
    std::size_t max_steps = 5'000'000;
};

namespace dp {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                        a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;
inline constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                        d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                        d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;
}  // namespace dp

/// Integrate y' = rhs(y) from t0 to t1 (t1 > t0).
///
/// `scale(y_mag)` maps the componentwise magnitude max(|y_old|, |y_new|) to
/// the error scale; a step is accepted when the RMS of err_i / (tol*scale_i)
/// is at most one.
template <std::size_t N, class Rhs, class Scale, class Observer>
Stats integrate_adaptive(Rhs&& rhs, Scale&& scale, State<N> y, double t0, double t1, const Options& opt,
                         Observer&& observe) {
    using namespace dp;
    Stats stats;
    const double span = t1 - t0;
    if (!(span > 0.0)) throw std::invalid_argument("integration span must be positive");

    auto axpy = [](const State<N>& base, double h, std::initializer_list<std::pair<double, const State<N>*>> terms) {
        State<N> out = base;
        for (const auto& [c, k] : terms)
            for (std::size_t i = 0; i < N; ++i) out[i] += h * c * (*k)[i];
        return out;
    };

    auto err_norm = [&](const State<N>& e, const State<N>& ya, const State<N>& yb) {
        State<N> mag;
        for (std::size_t i = 0; i < N; ++i) mag[i] = std::max(std::fabs(ya[i]), std::fabs(yb[i]));
        const State<N> sc = scale(mag);
        double acc = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double r = e[i] / (opt.tol * sc[i]);
            acc += r * r;
        }
        return std::sqrt(acc / static_cast<double>(N));
    };

    State<N> k1 = rhs(y);

    double h = opt.h_init;
    if (!(h > 0.0)) {
        // Hairer's starting-step heuristic.
        const double d0 = err_norm(y, y, y) * opt.tol;
        const double d1n = err_norm(k1, y, y) * opt.tol;
        double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
        h0 = std::min(h0, span);
        const State<N> y1 = axpy(y, h0, {{1.0, &k1}});
        const State<N> f1 = rhs(y1);
        State<N> df;
        for (std::size_t i = 0; i < N; ++i) df[i] = f1[i] - k1[i];
        const double d2 = err_norm(df, y, y) * opt.tol / h0;
        const double dmax = std::max(d1n, d2);
        const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
        h = std::min({100.0 * h0, h1, span});
    }

    double t = t0;
    double facmax = 10.0;
    const double tiny = 16.0 * std::numeric_limits<double>::epsilon();

    while (t < t1) {
        if (stats.accepted + stats.rejected >= opt.max_steps)
            throw integration_error("step budget exhausted", t);
        if (h < tiny * std::max(1.0, std::fabs(t))) throw integration_error("step size underflow", t);

        bool last = false;
        if (t + 1.01 * h >= t1) {
            h = t1 - t;
            last = true;
        }

        const State<N> k2 = rhs(axpy(y, h, {{a21, &k1}}));
        const State<N> k3 = rhs(axpy(y, h, {{a31, &k1}, {a32, &k2}}));
        const State<N> k4 = rhs(axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State<N> k5 = rhs(axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State<N> k6 = rhs(axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const State<N> ynew = axpy(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
        const State<N> k7 = rhs(ynew);

        State<N> e;
        for (std::size_t i = 0; i < N; ++i)
            e[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double err = err_norm(e, y, ynew);

        if (!std::isfinite(err)) {
            ++stats.rejected;
            h *= 0.1;
            facmax = 1.0;
            continue;
        }

        if (err <= 1.0) {
            DenseStep<N> step;
            step.t0 = t;
            step.h = h;
            step.y0 = y;
            step.y1 = ynew;
            for (std::size_t i = 0; i < N; ++i) {
                const double ydiff = ynew[i] - y[i];
                const double bspl = h * k1[i] - ydiff;
                step.rcont[0][i] = y[i];
                step.rcont[1][i] = ydiff;
                step.rcont[2][i] = bspl;
                step.rcont[3][i] = ydiff - h * k7[i] - bspl;
                step.rcont[4][i] =
                    h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
            }
            ++stats.accepted;
            t = last ? t1 : t + h;
            y = ynew;
            k1 = k7;
            if (!observe(static_cast<const DenseStep<N>&>(step))) {
                stats.stopped_by_observer = true;
                break;
            }
            const double fac = err == 0.0 ? facmax : std::min(facmax, std::max(0.2, 0.9 * std::pow(err, -0.2)));
            h *= fac;
            facmax = 10.0;
        } else {
            ++stats.rejected;
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            facmax = 1.0;
        }
    }
    stats.t_final = t;
    return stats;
}

}  // namespace born::ode
