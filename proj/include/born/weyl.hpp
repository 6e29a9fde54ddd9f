#pragma once

// Weyl quantization of a phase-space symbol on a truncated Fock basis.
//
// Matrix elements are phase-space integrals of the symbol against the
// cross-Wigner kernels of number states,
//
//     <m|A|n> = int dq dp A(q, p) W[|n><m|](q, p),
//     W[|n><m|] = ((-1)^k / pi) l_k^{(d)}(2 r^2) e^{-i (n-m) phi},
//
// with k = min(m, n), d = |n - m|, (q, p) = r (cos phi, sin phi) and l the
// normalised Laguerre function
//
//     l_k^{(d)}(x) = sqrt(k! / (k+d)!) x^{d/2} e^{-x/2} L_k^{(d)}(x).
//
// The radial integral (in t = r^2) uses Gauss-Laguerre nodes, the angular one
// the trapezoid rule, which is exact on the Fourier modes that survive.
// Real (p-even) symbols give real matrices.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "born/core.hpp"
#include "born/gauss_laguerre.hpp"
#include "born/quantum.hpp"

namespace born::weyl {

using Symbol = std::function<double(double q, double p)>;

class quadrature_error : public std::runtime_error {
public:
    quadrature_error(const std::string& what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

struct QuadratureSize {
    int radial;
    int angular;
};

struct WeylOptions {
    /// Entries of the default and a coarser rule must agree to this
    /// tolerance (relative to the largest entry); otherwise quadrature_error.
    double tol = 1e-8;
    bool check_convergence = true;
};

/// Default node counts: 4*nmax radial, 8*nmax + 64 angular.
inline QuadratureSize default_quadrature(int nmax) { return {4 * nmax, 8 * nmax + 64}; }

namespace detail {

// l_k^{(d)}(x) for k = 0..kmax by the upward recurrence
//   l_{k+1} = [(2k+1+d-x) l_k - sqrt(k(k+d)) l_{k-1}] / sqrt((k+1)(k+1+d)),
// which stays bounded, so no rescaling is needed.
inline void normalized_laguerre(int d, double x, int kmax, std::vector<double>& out) {
    out.assign(kmax + 1, 0.0);
    const double dd = d;
    const double log0 = (d > 0 ? 0.5 * dd * std::log(x) : 0.0) - 0.5 * x - 0.5 * std::lgamma(dd + 1.0);
    out[0] = x > 0.0 || d == 0 ? std::exp(log0) : 0.0;
    if (kmax >= 1) out[1] = (1.0 + dd - x) * out[0] / std::sqrt(1.0 + dd);
    for (int k = 1; k < kmax; ++k) {
        const double kd = k;
        out[k + 1] = ((2.0 * kd + 1.0 + dd - x) * out[k] - std::sqrt(kd * (kd + dd)) * out[k - 1]) /
                     std::sqrt((kd + 1.0) * (kd + 1.0 + dd));
    }
}

inline Eigen::MatrixXcd quantize(const Symbol& symbol, int nmax, QuadratureSize qs) {
    const int dim = nmax + 1;
    const quad::LaguerreRule rule = quad::gauss_laguerre(static_cast<std::size_t>(qs.radial));
    const int M = qs.angular;

    // Angular Fourier coefficients of the symbol at each radial node:
    // fourier[i][j] = (1/M) sum_a A(r_i, phi_a) e^{-i j phi_a}, j = 0..nmax.
    std::vector<std::vector<std::complex<double>>> fourier(rule.nodes.size(),
                                                           std::vector<std::complex<double>>(dim));
    std::vector<double> samples(M);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double r = std::sqrt(rule.nodes[i]);
        for (int a = 0; a < M; ++a) {
            const double phi = 2.0 * std::numbers::pi * a / M;
            samples[a] = symbol(r * std::cos(phi), r * std::sin(phi));
        }
        for (int j = 0; j < dim; ++j) {
            std::complex<double> acc = 0.0;
            for (int a = 0; a < M; ++a) {
                const double phi = 2.0 * std::numbers::pi * static_cast<double>((static_cast<long long>(j) * a) % M) / M;
                acc += samples[a] * std::complex<double>(std::cos(phi), -std::sin(phi));
            }
            fourier[i][j] = acc / static_cast<double>(M);
        }
    }

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    std::vector<double> ell;
    for (int d = 0; d <= nmax; ++d) {
        // Pairs (m, n = m + d), k = m = 0..nmax-d.
        const int kmax = nmax - d;
        std::vector<std::complex<double>> acc(kmax + 1, 0.0);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double w = rule.weights[i];
            if (w == 0.0) continue;
            normalized_laguerre(d, 2.0 * rule.nodes[i], kmax, ell);
            const std::complex<double> f = w * fourier[i][d];
            for (int k = 0; k <= kmax; ++k) acc[k] += f * ell[k];
        }
        for (int k = 0; k <= kmax; ++k) {
            const std::complex<double> v = (k % 2 == 0 ? 1.0 : -1.0) * acc[k];
            out(k, k + d) = v;
            out(k + d, k) = std::conj(v);
        }
    }
    return out;
}

}  // namespace detail

/// Complex Weyl matrix <m|A|n>, m, n = 0..nmax, for an arbitrary real symbol.
inline Eigen::MatrixXcd weyl_quantize_fock_complex(const Symbol& symbol, const quantum::FockTruncation& trunc,
                                                   QuadratureSize qs) {
    if (trunc.nmax() > 60) throw domain_error("weyl quantizer supports nmax <= 60");
    if (qs.radial < 1 || qs.angular < 2 * trunc.nmax() + 2) throw domain_error("weyl quantizer: quadrature too small");
    return detail::quantize(symbol, trunc.nmax(), qs);
}

struct WeylOperator {
    quantum::DenseOperator op;
    double quadrature_residual = 0.0;  // max entry change against a coarser rule
    double imag_residual = 0.0;        // largest |Im| entry dropped
};

/// Real Weyl matrix of a symbol that is even in p. The quadrature is checked
/// against a rule with three quarters of the nodes.
inline WeylOperator weyl_quantize_fock(const Symbol& symbol, const OscParams& /*params*/,
                                       const quantum::FockTruncation& trunc, const WeylOptions& opts = {}) {
    const QuadratureSize qs = default_quadrature(trunc.nmax());
    const Eigen::MatrixXcd full = weyl_quantize_fock_complex(symbol, trunc, qs);
    WeylOperator out;
    out.op.matrix = full.real();
    out.op.hermitian = true;
    out.imag_residual = full.imag().cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, full.cwiseAbs().maxCoeff());
    if (opts.check_convergence) {
        const QuadratureSize coarse{std::max(1, 3 * qs.radial / 4), std::max(2 * trunc.nmax() + 2, 3 * qs.angular / 4)};
        const Eigen::MatrixXcd low = weyl_quantize_fock_complex(symbol, trunc, coarse);
        out.quadrature_residual = (full - low).cwiseAbs().maxCoeff();
        if (out.quadrature_residual > opts.tol * scale)
            throw quadrature_error("weyl quadrature did not converge", out.quadrature_residual);
    }
    if (out.imag_residual > opts.tol * scale)
        throw domain_error("weyl_quantize_fock: symbol is not even in p, use weyl_quantize_fock_complex");
    return out;
}

/// Born Hamiltonian as a function of unscaled (q, p).
inline Symbol born_symbol(const OscParams& params) {
    const double e2 = params.eps2();
    return [e2](double q, double p) {
        const double q2 = e2 * q * q, p2 = e2 * p * p;
        const double x = q2 + p2 + q2 * p2;
        return x / (std::sqrt(1.0 + x) + 1.0) / e2;
    };
}

/// Spectrum of the Weyl-quantized Born Hamiltonian. Eigenvalues from nmax and
/// nmax/2 are compared index by index; those moving less than tol are marked
/// converged. Sector labels come from the eigenvector support (the symbol is
/// invariant under quarter turns of phase space, so the matrix keeps n mod 4).
inline quantum::Spectrum weyl_spectrum_born(const OscParams& params, const quantum::FockTruncation& trunc, double tol,
                                            const quantum::SpectrumOptions& sopts = {}) {
    const Symbol sym = born_symbol(params);
    const int coarse_n = std::max(8, trunc.nmax() / 2);
    WeylOptions wopts;
    wopts.tol = std::max(1e-10, 0.1 * tol);
    const WeylOperator fine = weyl_quantize_fock(sym, params, trunc, wopts);
    const WeylOperator coarse = weyl_quantize_fock(sym, params, quantum::FockTruncation(coarse_n), wopts);

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_f(fine.op.matrix);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_c(coarse.op.matrix, Eigen::EigenvaluesOnly);

    quantum::Spectrum out;
    out.epsilon = params.epsilon();
    out.nmax = trunc.nmax();
    out.tol = tol;
    int per_sector[4] = {0, 0, 0, 0};
    for (Eigen::Index i = 0; i < es_f.eigenvalues().size(); ++i) {
        const double v = es_f.eigenvalues()[i];
        const bool conv = i < es_c.eigenvalues().size() && std::fabs(v - es_c.eigenvalues()[i]) < tol;
        const int s = quantum::dominant_sector(es_f.eigenvectors().col(i)).first;
        const int idx = per_sector[s]++;
        if (conv || sopts.include_unconverged) out.entries.push_back({v, s, idx, conv});
    }
    return out;
}

}  // namespace born::weyl
