#pragma once

// Eigenvalues of a real symmetric tridiagonal matrix by Sturm-sequence
// bisection.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <stdexcept>
#include <vector>

namespace born::tridiag {

/// Number of eigenvalues strictly less than x (LDL^T inertia count).
inline std::size_t sturm_count(std::span<const double> diag, std::span<const double> off2, double x) {
    constexpr double tiny = std::numeric_limits<double>::min();
    std::size_t count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        const double o2 = i == 0 ? 0.0 : off2[i - 1];
        d = diag[i] - x - (i == 0 ? 0.0 : o2 / d);
        if (std::fabs(d) < tiny) d = -tiny;
        if (d < 0.0) ++count;
    }
    return count;
}

/// Gershgorin interval enclosing the spectrum.
inline std::pair<double, double> gershgorin(std::span<const double> diag, std::span<const double> off) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        const double r = (i > 0 ? std::fabs(off[i - 1]) : 0.0) + (i + 1 < diag.size() ? std::fabs(off[i]) : 0.0);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    return {lo, hi};
}

/// All eigenvalues, ascending. Each is bisected until its bracket is narrower
/// than tol * max(|lambda|, matrix norm * eps) or cannot be split further in
/// floating point, which keeps the absolute error within tol * ||T||.
inline std::vector<double> eigenvalues(std::span<const double> diag, std::span<const double> off, double tol) {
    const std::size_t n = diag.size();
    if (n == 0) return {};
    if (off.size() + 1 != n) throw std::invalid_argument("tridiagonal: off-diagonal must have n-1 entries");
    if (!(tol > 0.0)) throw std::invalid_argument("tridiagonal: tolerance must be positive");

    std::vector<double> off2(off.size());
    for (std::size_t i = 0; i < off.size(); ++i) off2[i] = off[i] * off[i];

    auto [glo, ghi] = gershgorin(diag, off);
    const double norm = std::max(std::fabs(glo), std::fabs(ghi));
    const double pad = 2.0 * std::numeric_limits<double>::epsilon() * norm + std::numeric_limits<double>::min();
    glo -= pad;
    ghi += pad;
    const double floor_abs = std::numeric_limits<double>::epsilon() * norm;

    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        // Bracket [lo, hi) holding the k-th eigenvalue: count(lo) <= k < count(hi).
        double lo = glo;
        double hi = ghi;
        if (k > 0) lo = std::max(lo, out[k - 1] - pad);
        for (int it = 0; it < 2000; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            const double width = hi - lo;
            if (width <= tol * std::max(std::fabs(mid), floor_abs)) break;
            if (sturm_count(diag, off2, mid) > k)
                hi = mid;
            else
                lo = mid;
        }
        out[k] = 0.5 * (lo + hi);
    }
    return out;
}

}  // namespace born::tridiag
