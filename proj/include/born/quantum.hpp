#pragma once

// Fock-basis quantization of B = H_B (1 + eps^2 H_B / 2) = (q^2 + p^2)/2 + (eps^2/2) q^2 p^2,
// with the ordering q p^2 q for the quartic term.
//
// In the number basis the operator only couples |n> to |n +- 4>:
//
//     <n|B|n>   = n + 1/2 + eps^2 u_n,      u_n = 1/8 + (1 + n + n^2)/4
//     <n+4|B|n> = -eps^2 v_n / 8,           v_n = sqrt((n+1)(n+2)(n+3)(n+4))
//
// so the spectrum splits into four independent tridiagonal sectors labelled
// by n mod 4. The factor 1/8 on the coupling is what the explicit matrix
// product q p^2 q produces; brute_force_B builds that product directly.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "born/core.hpp"
#include "born/tridiagonal.hpp"

namespace born::quantum {

/// Retains |0>..|nmax>.
class FockTruncation {
public:
    explicit FockTruncation(int nmax) : nmax_(nmax) {
        if (nmax < 8) throw domain_error("Fock truncation needs nmax >= 8");
    }
    int nmax() const noexcept { return nmax_; }
    int dim() const noexcept { return nmax_ + 1; }

private:
    int nmax_;
};

inline double u_coeff(int n) {
    const double nd = n;
    return 0.125 + 0.25 * (1.0 + nd + nd * nd);
}

inline double v_coeff(int n) {
    if (n < 0) return 0.0;
    const double nd = n;
    return std::sqrt((nd + 1.0) * (nd + 2.0) * (nd + 3.0) * (nd + 4.0));
}

/// Truncated matrix of a real operator.
struct DenseOperator {
    Eigen::MatrixXd matrix;
    bool hermitian = false;

    double symmetry_residual() const { return (matrix - matrix.transpose()).cwiseAbs().maxCoeff(); }
};

/// Position operator (a + a^dag)/sqrt(2) on |0>..|dim-1>.
inline Eigen::MatrixXd position_matrix(int dim) {
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) q(n - 1, n) = q(n, n - 1) = std::sqrt(0.5 * n);
    return q;
}

/// p^2 = -(a^dag - a)^2 / 2 as an explicit product of truncated ladder matrices.
inline Eigen::MatrixXd momentum_squared_matrix(int dim) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    const Eigen::MatrixXd diff = a.transpose() - a;
    return -0.5 * diff * diff;
}

/// B = (p^2 + q^2)/2 + (eps^2/2) q p^2 q by explicit matrix products. The
/// products are formed in a basis padded by four states and then cropped, so
/// every retained entry is free of truncation error.
inline DenseOperator brute_force_B(const OscParams& params, const FockTruncation& trunc) {
    if (trunc.nmax() > 10000) throw domain_error("brute_force_B: nmax too large for dense construction");
    const int dim = trunc.dim();
    const int big = dim + 4;
    const Eigen::MatrixXd q = position_matrix(big);
    const Eigen::MatrixXd p2 = momentum_squared_matrix(big);
    const Eigen::MatrixXd full = 0.5 * (p2 + q * q) + 0.5 * params.eps2() * (q * p2 * q);
    return {full.topLeftCorner(dim, dim), true};
}

/// One n mod 4 block: rows n = sector + 4k, k = 0..K-1.
struct SectorMatrix {
    int sector = 0;
    std::vector<double> diag;
    std::vector<double> offdiag;
    double epsilon = 0.0;

    int size() const noexcept { return static_cast<int>(diag.size()); }
    int fock_index(int k) const noexcept { return sector + 4 * k; }
};

/// Number of sector rows inside |0>..|nmax>.
inline int sector_size(int nmax, int sector) { return sector > nmax ? 0 : (nmax - sector) / 4 + 1; }

inline SectorMatrix build_sector(const OscParams& params, int sector, int K) {
    if (sector < 0 || sector > 3) throw domain_error("sector must be 0..3");
    if (K < 2) throw domain_error("sector needs at least two rows");
    SectorMatrix sm;
    sm.sector = sector;
    sm.epsilon = params.epsilon();
    sm.diag.resize(K);
    sm.offdiag.resize(K - 1);
    for (int k = 0; k < K; ++k) {
        const int n = sector + 4 * k;
        sm.diag[k] = n + 0.5 + params.eps2() * u_coeff(n);
        if (k + 1 < K) sm.offdiag[k] = -params.eps2() * v_coeff(n) / 8.0;
    }
    return sm;
}

/// Scatter the four sectors back into a dense |0>..|nmax> matrix.
inline Eigen::MatrixXd assemble_sectors(const OscParams& params, const FockTruncation& trunc) {
    const int dim = trunc.dim();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (int s = 0; s < 4; ++s) {
        const int K = sector_size(trunc.nmax(), s);
        const SectorMatrix sm = build_sector(params, s, std::max(K, 2));
        for (int k = 0; k < K; ++k) {
            const int n = sm.fock_index(k);
            m(n, n) = sm.diag[k];
            if (k + 1 < K) m(n, n + 4) = m(n + 4, n) = sm.offdiag[k];
        }
    }
    return m;
}

/// Eigenvalues of one sector, ascending, to tol relative accuracy (floored
/// at what the Sturm count can resolve, about eps * ||T||).
inline std::vector<double> eigenvalues_sector(const SectorMatrix& sm, double tol) {
    if (!(tol >= 1e-13)) throw domain_error("eigenvalues_sector: tol must be >= 1e-13");
    return tridiag::eigenvalues(sm.diag, sm.offdiag, tol);
}

struct SpectrumEntry {
    double value;  // eigenvalue B'
    int sector;
    int index;  // position within its sector
    bool converged;
};

struct Spectrum {
    std::vector<SpectrumEntry> entries;  // ascending in value
    double epsilon = 0.0;
    int nmax = 0;  // basis size the reported values come from
    double tol = 0.0;

    std::size_t converged_count() const {
        return static_cast<std::size_t>(
            std::count_if(entries.begin(), entries.end(), [](const SpectrumEntry& e) { return e.converged; }));
    }
};

struct SpectrumOptions {
    bool include_unconverged = false;
};

/// Merged spectrum of the four sectors. Each sector is solved at nmax and at
/// 2*nmax; an eigenvalue is converged when the doubling moves it by less than
/// tol. Reported values come from the 2*nmax solve.
inline Spectrum spectrum(const OscParams& params, const FockTruncation& trunc, double tol,
                         const SpectrumOptions& opts = {}) {
    if (!(tol > 0.0)) throw domain_error("spectrum: tol must be positive");
    const int coarse_n = trunc.nmax();
    const int fine_n = 2 * coarse_n;
    Spectrum out;
    out.epsilon = params.epsilon();
    out.nmax = fine_n;
    out.tol = tol;
    constexpr double solver_tol = 1e-13;
    for (int s = 0; s < 4; ++s) {
        const int kc = sector_size(coarse_n, s);
        const int kf = sector_size(fine_n, s);
        const auto coarse = eigenvalues_sector(build_sector(params, s, kc), solver_tol);
        const auto fine = eigenvalues_sector(build_sector(params, s, kf), solver_tol);
        for (int k = 0; k < kf; ++k) {
            const bool conv = k < kc && std::fabs(fine[k] - coarse[k]) < tol;
            if (conv || opts.include_unconverged) out.entries.push_back({fine[k], s, k, conv});
        }
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.value < b.value; });
    return out;
}

/// Invert B = E (1 + eps^2 E / 2): E = (sqrt(1 + 2 eps^2 B) - 1) / eps^2.
inline double b_to_energy(double bprime, const OscParams& params) {
    const double rad = 1.0 + 2.0 * params.eps2() * bprime;
    if (!(rad >= 0.0)) throw domain_error("b_to_energy: 1 + 2 eps^2 B' is negative");
    return 2.0 * bprime / (std::sqrt(rad) + 1.0);
}

inline double energy_to_b(double energy, const OscParams& params) {
    return energy * (1.0 + 0.5 * params.eps2() * energy);
}

/// Coefficients c_k of a trial eigenvector inside one sector, generated by
/// the three-term recursion
///
///     w_k c_{k+1} - (D_k - B') c_k + w_{k-1} c_{k-1} = 0,   c_0 = 1,
///
/// with D_k = n + 1/2 + eps^2 u_n and w_k = eps^2 v_n / 8 (n = sector + 4k).
/// c_K is proportional to det(T_K - B') for the K-row sector matrix T_K, so
/// its sign flips at every eigenvalue of that truncation.
///
/// Strict mode uses the recursion with D_k = 1/2 + eps^2 u_n and w_k = eps^2 v_n
/// exactly as usually quoted; it does not reproduce the operator spectrum
/// and exists for comparison only.
struct RecursionTail {
    double bprime = 0.0;
    int sector = 0;
    std::vector<double> c;  // c_0..c_K, divided by exp(log_scale)
    double log_scale = 0.0;
    double growth_indicator = 0.0;  // log|c_K / c_{K-1}|

    /// Sign of c_K.
    int tail_sign() const noexcept { return c.back() > 0.0 ? 1 : (c.back() < 0.0 ? -1 : 0); }
};

struct RecursionOptions {
    bool unscaled_form = false;
};

inline RecursionTail recursion_tail(double bprime, const OscParams& params, int sector, int K,
                                    const RecursionOptions& opts = {}) {
    if (sector < 0 || sector > 3) throw domain_error("sector must be 0..3");
    if (K < 4) throw domain_error("recursion_tail needs K >= 4");
    const double e2 = params.eps2();
    auto diag = [&](int n) { return (opts.unscaled_form ? 0.5 : n + 0.5) + e2 * u_coeff(n); };
    auto coupling = [&](int n) { return e2 * v_coeff(n) / (opts.unscaled_form ? 1.0 : 8.0); };

    RecursionTail rt;
    rt.bprime = bprime;
    rt.sector = sector;
    rt.c.resize(K + 1);
    rt.c[0] = 1.0;
    constexpr double big = 1e150;
    for (int k = 0; k < K; ++k) {
        const int n = sector + 4 * k;
        const double prev = k > 0 ? coupling(n - 4) * rt.c[k - 1] : 0.0;
        rt.c[k + 1] = ((diag(n) - bprime) * rt.c[k] - prev) / coupling(n);
        if (std::fabs(rt.c[k + 1]) > big) {
            for (int j = 0; j <= k + 1; ++j) rt.c[j] /= big;
            rt.log_scale += std::log(big);
        }
    }
    rt.growth_indicator = std::log(std::fabs(rt.c[K])) - std::log(std::fabs(rt.c[K - 1]));
    return rt;
}

/// Sector (n mod 4) carrying the largest weight of a Fock-basis vector, and
/// the total weight outside it.
inline std::pair<int, double> dominant_sector(const Eigen::VectorXd& v) {
    double w[4] = {0, 0, 0, 0};
    for (Eigen::Index n = 0; n < v.size(); ++n) w[n % 4] += v[n] * v[n];
    const int best = static_cast<int>(std::max_element(w, w + 4) - w);
    const double total = w[0] + w[1] + w[2] + w[3];
    return {best, total > 0.0 ? (total - w[best]) / total : 0.0};
}

}  // namespace born::quantum
