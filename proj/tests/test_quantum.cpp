#include <catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>

#include "born/quantum.hpp"

using namespace born;
using namespace born::quantum;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Independent construction of q p^2 q from complex ladder matrices,
// p = i (a^dag - a) / sqrt(2), in a basis padded well beyond the block read.
Eigen::MatrixXd reference_qp2q(int dim) {
    const int big = dim + 10;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(big, big);
    for (int n = 1; n < big; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    const Eigen::MatrixXcd ad = a.adjoint();
    const Eigen::MatrixXcd q = (a + ad) / std::sqrt(2.0);
    const Eigen::MatrixXcd p = std::complex<double>(0.0, 1.0) * (ad - a) / std::sqrt(2.0);
    const Eigen::MatrixXcd m = q * p * p * q;
    REQUIRE(m.imag().cwiseAbs().maxCoeff() < 1e-12);
    return m.real().topLeftCorner(dim, dim);
}

}  // namespace

TEST_CASE("u and v coefficients") {
    CHECK(u_coeff(0) == 0.375);
    CHECK(u_coeff(3) == 0.125 + 13.0 / 4);
    CHECK_THAT(v_coeff(0), WithinRel(std::sqrt(24.0), 1e-15));
    CHECK_THAT(v_coeff(2), WithinRel(std::sqrt(360.0), 1e-15));
    CHECK(v_coeff(-1) == 0.0);
    CHECK(v_coeff(-4) == 0.0);
}

TEST_CASE("Diagonal of q p^2 q is (3 + 2n + 2n^2)/4") {
    const Eigen::MatrixXd m = reference_qp2q(30);
    for (int n = 0; n < 30; ++n) CHECK_THAT(m(n, n), WithinRel((3.0 + 2.0 * n + 2.0 * n * n) / 4.0, 1e-13));
    // and the only other non-zero band is n +- 4 (besides n +- 2, which cancels)
    for (int n = 0; n + 2 < 30; ++n) CHECK_THAT(m(n, n + 2), WithinAbs(0.0, 1e-12));
    for (int n = 0; n + 4 < 30; ++n) CHECK_THAT(m(n, n + 4), WithinRel(-v_coeff(n) / 4.0, 1e-13));
}

TEST_CASE("brute_force_B matches the independent operator product") {
    for (double eps : {0.0001, 0.4, 1.5}) {
        const OscParams p(eps);
        const FockTruncation t(40);
        const auto B = brute_force_B(p, t);
        Eigen::MatrixXd ref = 0.5 * p.eps2() * reference_qp2q(t.dim());
        for (int n = 0; n < t.dim(); ++n) ref(n, n) += n + 0.5;
        CHECK(B.hermitian);
        CHECK(B.symmetry_residual() < 1e-12);
        CHECK((B.matrix - ref).cwiseAbs().maxCoeff() < 1e-11 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("Ground-state and first coupling entries") {
    const OscParams p(0.7);
    const auto B = brute_force_B(p, FockTruncation(16)).matrix;
    CHECK_THAT(B(0, 0), WithinRel(0.5 + 3.0 * p.eps2() / 8.0, 1e-14));
    CHECK_THAT(B(4, 0), WithinRel(-p.eps2() * std::sqrt(24.0) / 8.0, 1e-14));
    CHECK_THAT(B(0, 4), WithinRel(B(4, 0), 1e-15));
    CHECK_THAT(B(2, 0), WithinAbs(0.0, 1e-15));
}

TEST_CASE("Harmonic limit of brute_force_B") {
    const auto B = brute_force_B(OscParams(1e-9), FockTruncation(12)).matrix;
    for (int n = 0; n < 13; ++n) CHECK_THAT(B(n, n), WithinRel(n + 0.5, 1e-15));
}

TEST_CASE("Assembled sectors reproduce brute_force_B") {
    for (double eps : {0.05, 0.3, 1.0}) {
        const OscParams p(eps);
        const FockTruncation t(64);
        const Eigen::MatrixXd diff = assemble_sectors(p, t) - brute_force_B(p, t).matrix;
        CHECK(diff.cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("build_sector layout and preconditions") {
    const OscParams p(0.5);
    const auto sm = build_sector(p, 2, 5);
    CHECK(sm.size() == 5);
    CHECK(sm.offdiag.size() == 4);
    CHECK(sm.fock_index(3) == 14);
    CHECK_THAT(sm.diag[1], WithinRel(6.5 + 0.25 * u_coeff(6), 1e-15));
    CHECK_THAT(sm.offdiag[1], WithinRel(-0.25 * v_coeff(6) / 8.0, 1e-15));
    CHECK_THROWS_AS(build_sector(p, 4, 5), domain_error);
    CHECK_THROWS_AS(build_sector(p, 0, 1), domain_error);
    CHECK_THROWS_AS(FockTruncation(7), domain_error);
    CHECK(sector_size(64, 0) == 17);
    CHECK(sector_size(64, 1) == 16);
    CHECK(sector_size(8, 3) == 2);
}

TEST_CASE("Sector eigenvalues against a dense solve") {
    const OscParams p(0.6);
    const auto sm = build_sector(p, 1, 30);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(30, 30);
    for (int k = 0; k < 30; ++k) m(k, k) = sm.diag[k];
    for (int k = 0; k + 1 < 30; ++k) m(k, k + 1) = m(k + 1, k) = sm.offdiag[k];
    const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues();
    const auto ev = eigenvalues_sector(sm, 1e-13);
    const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
    for (int k = 0; k < 30; ++k) CHECK_THAT(ev[k], WithinAbs(ref[k], 1e-12 * norm));
    CHECK_THROWS_AS(eigenvalues_sector(sm, 1e-14), domain_error);
    // eps -> 0 leaves the diagonal
    const auto flat = eigenvalues_sector(build_sector(OscParams(1e-12), 3, 4), 1e-13);
    for (int k = 0; k < 4; ++k) CHECK_THAT(flat[k], WithinRel(3 + 4 * k + 0.5, 1e-13));
}

TEST_CASE("Dense eigenvectors live in one n mod 4 class") {
    for (double eps : {0.05, 0.3, 1.0}) {
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(brute_force_B(OscParams(eps), FockTruncation(64)).matrix);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            CHECK(dominant_sector(es.eigenvectors().col(i)).second < 1e-10);
    }
}

TEST_CASE("Second-order perturbation theory at small eps") {
    // lambda_n = n + 1/2 + eps^2 u_n + eps^4 (v_{n-4}^2 - v_n^2) / 256 + O(eps^6)
    for (double eps : {0.02, 0.05}) {
        const OscParams p(eps);
        const auto s = spectrum(p, FockTruncation(64), 1e-12);
        REQUIRE(s.entries.size() >= 10);
        const double e4 = p.eps2() * p.eps2();
        for (int n = 0; n < 10; ++n) {
            const double v4 = v_coeff(n - 4), v0 = v_coeff(n);
            const double pt2 = n + 0.5 + p.eps2() * u_coeff(n) + e4 * (v4 * v4 - v0 * v0) / 256.0;
            CHECK_THAT(s.entries[n].value, WithinAbs(pt2, 2e3 * e4 * p.eps2()));
            CHECK(s.entries[n].sector == n % 4);
            CHECK(s.entries[n].index == n / 4);
        }
    }
}

TEST_CASE("Small eps spectrum is n + 1/2") {
    const OscParams p(1e-3);
    const auto s = spectrum(p, FockTruncation(64), 1e-10);
    REQUIRE(s.entries.size() >= 20);
    for (int n = 0; n < 20; ++n) {
        CHECK_THAT(s.entries[n].value, WithinAbs(n + 0.5, 1e-4));
        CHECK(s.entries[n].sector == n % 4);
    }
    for (double eps : {0.01, 0.05, 0.1}) {
        const auto lo = spectrum(OscParams(eps), FockTruncation(32), 1e-10).entries.front().value;
        CHECK(std::fabs(lo - 0.5) <= eps * eps);
    }
}

TEST_CASE("Spectrum convergence bookkeeping") {
    const OscParams p(0.5);
    const double tol = 1e-9;
    std::size_t prev = 0;
    for (int nmax : {32, 64, 128}) {
        const auto s = spectrum(p, FockTruncation(nmax), tol);
        CHECK(s.nmax == 2 * nmax);
        CHECK(s.converged_count() == s.entries.size());
        CHECK(s.converged_count() >= prev);
        prev = s.converged_count();
        for (std::size_t i = 1; i < s.entries.size(); ++i) CHECK(s.entries[i - 1].value <= s.entries[i].value);
        // converged values hold under a further doubling
        const auto finer = spectrum(p, FockTruncation(2 * nmax), tol, {true});
        for (const auto& e : s.entries) {
            bool found = false;
            for (const auto& f : finer.entries)
                if (f.sector == e.sector && f.index == e.index) {
                    CHECK_THAT(f.value, WithinAbs(e.value, tol));
                    found = true;
                }
            CHECK(found);
        }
    }
    const auto all = spectrum(p, FockTruncation(32), tol, {true});
    CHECK(all.entries.size() == 65);
    CHECK_THROWS_AS(spectrum(p, FockTruncation(32), 0.0), domain_error);
}

TEST_CASE("b_to_energy inverts B = E (1 + eps^2 E / 2)") {
    CHECK(b_to_energy(0.0, OscParams(1.0)) == 0.0);
    CHECK_THAT(b_to_energy(1.5, OscParams(1.0)), WithinRel(1.0, 1e-15));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1e3);
    for (int i = 0; i < 500; ++i) {
        const OscParams p(0.05 + 0.002 * i);
        const double E = u(rng);
        CHECK_THAT(b_to_energy(energy_to_b(E, p), p), WithinRel(E, 1e-14));
    }
    CHECK_THAT(b_to_energy(2.5, OscParams(1e-8)), WithinRel(2.5, 1e-12));
    CHECK_THROWS_AS(b_to_energy(-10.0, OscParams(1.0)), domain_error);
    // strictly increasing
    const OscParams p(0.8);
    double prev = -1.0;
    for (double b = 0.0; b < 100.0; b += 0.37) {
        const double e = b_to_energy(b, p);
        CHECK(e > prev);
        prev = e;
    }
}

TEST_CASE("Recursion tail changes sign across converged eigenvalues") {
    for (double eps : {0.1, 0.5, 1.0}) {
        const OscParams p(eps);
        const double tol = 1e-8;
        const auto s = spectrum(p, FockTruncation(128), tol);
        REQUIRE(!s.entries.empty());
        for (const auto& e : s.entries) {
            const int K = sector_size(s.nmax, e.sector);
            const auto lo = recursion_tail(e.value - 10 * tol, p, e.sector, K);
            const auto hi = recursion_tail(e.value + 10 * tol, p, e.sector, K);
            CHECK(lo.tail_sign() * hi.tail_sign() == -1);
        }
    }
}

TEST_CASE("Recursion tail diverges away from the spectrum") {
    const OscParams p(0.5);
    const auto ev = eigenvalues_sector(build_sector(p, 0, 60), 1e-13);
    const double mid = 0.5 * (ev[0] + ev[1]);
    const auto rt = recursion_tail(mid, p, 0, 40);
    CHECK(rt.log_scale == 0.0);
    CHECK(rt.c.front() == 1.0);
    CHECK(rt.growth_indicator > 0.0);
    CHECK(rt.c.size() == 41);
}

TEST_CASE("Recursion in the decoupled limit") {
    const OscParams p(1e-6);
    // at B' = m + 1/2 + eps^2 u_m the first coefficient vanishes up to rounding
    const auto at = recursion_tail(2.5 + p.eps2() * u_coeff(2), p, 2, 6);
    CHECK(std::fabs(at.c[1]) < 1e-3);
    const auto off = recursion_tail(3.0, p, 2, 6);
    CHECK(std::fabs(off.c[1]) > 1e6);
    CHECK_THROWS_AS(recursion_tail(1.0, p, 0, 3), domain_error);
    CHECK_THROWS_AS(recursion_tail(1.0, p, 5, 10), domain_error);
}

TEST_CASE("Literal recursion form does not track the operator spectrum") {
    const OscParams p(0.5);
    const auto s = spectrum(p, FockTruncation(64), 1e-8);
    int flips = 0;
    for (const auto& e : s.entries) {
        const int K = sector_size(s.nmax, e.sector);
        RecursionOptions strict;
        strict.unscaled_form = true;
        const auto lo = recursion_tail(e.value - 1e-7, p, e.sector, K, strict);
        const auto hi = recursion_tail(e.value + 1e-7, p, e.sector, K, strict);
        flips += lo.tail_sign() * hi.tail_sign() == -1;
    }
    CHECK(flips < static_cast<int>(s.entries.size()));
}
