#pragma once

// Table-producing commands behind the command-line tool. Each takes a plain
// configuration struct and returns a ResultTable; parsing and I/O live in
// the executable.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "born/classical.hpp"
#include "born/core.hpp"
#include "born/quantum.hpp"
#include "born/semiclassical.hpp"
#include "born/table.hpp"
#include "born/weyl.hpp"

namespace born::commands {

inline constexpr const char* version = "1.0.0";

struct Common {
    double epsilon = 1.0;
    double tol = 1e-10;
    std::string command_line;  // logged verbatim into the metadata
};

inline table::ResultTable make_table(std::vector<std::string> columns, const Common& c, const std::string& command) {
    table::ResultTable t(std::move(columns));
    t.set_meta("command", command);
    t.set_meta("command_line", c.command_line);
    t.set_meta("version", std::string(version));
    t.set_meta("epsilon", c.epsilon);
    t.set_meta("tolerance", c.tol);
    return t;
}

inline void check_common(const Common& c) {
    classical::detail::check_tol(c.tol);
    OscParams{c.epsilon};
}

// ------------------------------------------------------------ trajectory ----

struct TrajectoryConfig {
    Common common;
    double q0 = 1.0;  // initial qt
    double p0 = 0.0;  // initial pt
    double t_end = 10.0;
    double force = 0.0;
    int samples = 0;  // 0: every accepted step, otherwise uniform samples on [0, t_end]
};

/// Columns t, qt, pt, energy, drift; drift is |H(t) - H(0)| / max(|H(0)|, 1).
inline table::ResultTable trajectory(const TrajectoryConfig& cfg) {
    check_common(cfg.common);
    if (cfg.samples < 0) throw domain_error("samples must be non-negative");
    const OscParams params(cfg.common.epsilon);
    std::vector<double> times;
    if (cfg.samples > 0) {
        times.resize(static_cast<std::size_t>(cfg.samples) + 1);
        for (int i = 0; i <= cfg.samples; ++i) times[i] = cfg.t_end * i / cfg.samples;
    }
    const auto traj = classical::integrate({cfg.q0, cfg.p0}, params, cfg.t_end, cfg.common.tol, cfg.force, times);

    auto t = make_table({"t", "qt", "pt", "energy", "drift"}, cfg.common, "trajectory");
    t.set_meta("force", cfg.force);
    t.set_meta("energy0", traj.energy0);
    t.set_meta("max_energy_drift", traj.max_energy_drift);
    const double denom = std::max(std::fabs(traj.energy0), 1.0);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto& s = traj.states[i];
        const double e = classical::detail::total_energy(s, params, cfg.force);
        t.add_row({traj.times[i], s.qt, s.pt, e, std::fabs(e - traj.energy0) / denom});
    }
    return t;
}

// ----------------------------------------------------------- period-scan ----

struct PeriodScanConfig {
    Common common;
    double e_from = 1e-4;
    double e_to = 1e4;
    int count = 9;  // log-spaced energies
};

inline table::ResultTable period_scan(const PeriodScanConfig& cfg) {
    check_common(cfg.common);
    if (!(cfg.e_from > 0.0) || !(cfg.e_to >= cfg.e_from)) throw domain_error("need 0 < e-from <= e-to");
    if (cfg.count < 1 || (cfg.count == 1 && cfg.e_to != cfg.e_from)) throw domain_error("count must be >= 2 for a range");
    const OscParams params(cfg.common.epsilon);
    auto t = make_table({"energy", "qmax", "T_numeric", "T_elliptic", "T_asymptotic", "gap_numeric_elliptic",
                         "gap_asymptotic_elliptic"},
                        cfg.common, "period-scan");
    const double l0 = std::log(cfg.e_from), l1 = std::log(cfg.e_to);
    for (int i = 0; i < cfg.count; ++i) {
        double e = cfg.count == 1 ? cfg.e_from : std::exp(l0 + (l1 - l0) * i / (cfg.count - 1));
        if (i == 0) e = cfg.e_from;
        if (i == cfg.count - 1) e = cfg.e_to;
        const EnergyValue E = EnergyValue::born(e);
        const double qm = level_qmax(E, params);
        const double tn = classical::period_numeric(E, params, cfg.common.tol).period;
        const double te = classical::period_elliptic(E, params).period;
        const double ta = classical::period_asymptotic(qm).period;
        t.add_row({e, qm, tn, te, ta, std::fabs(tn - te) / te, std::fabs(ta - te) / te});
    }
    return t;
}

// -------------------------------------------------------------- spectrum ----

enum class SpectrumMethod { sector, weyl_grid };

struct SpectrumConfig {
    Common common;
    int nmax = 64;
    SpectrumMethod method = SpectrumMethod::sector;
    bool include_unconverged = false;
};

/// Columns index, sector, Bprime, energy, converged. The sector method
/// diagonalizes B and maps B' to energies; the Weyl grid method diagonalizes
/// the quantized Hamiltonian and reports B' = E (1 + eps^2 E / 2).
inline table::ResultTable spectrum(const SpectrumConfig& cfg) {
    check_common(cfg.common);
    const OscParams params(cfg.common.epsilon);
    const quantum::FockTruncation trunc(cfg.nmax);
    quantum::SpectrumOptions opts;
    opts.include_unconverged = cfg.include_unconverged;

    auto t = make_table({"index", "sector", "Bprime", "energy", "converged"}, cfg.common, "spectrum");
    t.set_meta("method", std::string(cfg.method == SpectrumMethod::sector ? "sector" : "weyl-grid"));
    t.set_meta("nmax", static_cast<long long>(cfg.nmax));

    long long idx = 0;
    if (cfg.method == SpectrumMethod::sector) {
        const quantum::Spectrum s = quantum::spectrum(params, trunc, cfg.common.tol, opts);
        t.set_meta("nmax_fine", static_cast<long long>(s.nmax));
        t.set_meta("converged_count", static_cast<long long>(s.converged_count()));
        for (const auto& e : s.entries)
            t.add_row({idx++, static_cast<long long>(e.sector), e.value, quantum::b_to_energy(e.value, params),
                       static_cast<long long>(e.converged)});
    } else {
        const quantum::Spectrum s = weyl::weyl_spectrum_born(params, trunc, cfg.common.tol, opts);
        t.set_meta("converged_count", static_cast<long long>(s.converged_count()));
        for (const auto& e : s.entries)
            t.add_row({idx++, static_cast<long long>(e.sector), quantum::energy_to_b(e.value, params), e.value,
                       static_cast<long long>(e.converged)});
    }
    return t;
}

// --------------------------------------------------------- semiclassical ----

enum class Hamiltonian { born, logcosh };

struct SemiclassicalConfig {
    Common common;
    int n_from = 0;
    int n_to = 20;
    Hamiltonian hamiltonian = Hamiltonian::born;
    semiclassical::AreaMethod method = semiclassical::AreaMethod::quadrature;
};

/// Columns n, E_area, E_asymptotic, residual, rel_gap. Rows whose
/// asymptotic estimate is outside its regime (non-positive energy) get
/// empty E_asymptotic and rel_gap cells and a warning on `warn`.
inline table::ResultTable semiclassical_scan(const SemiclassicalConfig& cfg, std::ostream& warn = std::cerr) {
    check_common(cfg.common);
    if (cfg.n_from < 0 || cfg.n_to < cfg.n_from) throw domain_error("need 0 <= n-from <= n-to");
    if (cfg.hamiltonian == Hamiltonian::born && cfg.method == semiclassical::AreaMethod::asymptotic)
        throw domain_error("area method must be quadrature or elliptic");
    const OscParams params(cfg.common.epsilon);
    auto t = make_table({"n", "E_area", "E_asymptotic", "residual", "rel_gap"}, cfg.common, "semiclassical");
    const bool born = cfg.hamiltonian == Hamiltonian::born;
    t.set_meta("hamiltonian", std::string(born ? "born" : "logcosh"));
    t.set_meta("method", std::string(born ? semiclassical::to_string(cfg.method) : "quadrature"));

    long long skipped = 0;
    for (int n = cfg.n_from; n <= cfg.n_to; ++n) {
        const auto area = born ? semiclassical::weyl_solve_born(n, params, cfg.method, cfg.common.tol)
                               : semiclassical::logcosh_solve(n, params, cfg.common.tol);
        const auto asym = born ? semiclassical::asymptotic_born(n, params) : semiclassical::logcosh_asymptotic(n, params);
        if (!(asym.energy > 0.0)) {
            ++skipped;
            warn << "warning: n=" << n << ": asymptotic estimate outside its regime, cells left empty\n";
            t.add_row({static_cast<long long>(n), area.energy, {}, area.residual, {}});
            continue;
        }
        t.add_row({static_cast<long long>(n), area.energy, asym.energy, area.residual,
                   std::fabs(asym.energy - area.energy) / area.energy});
    }
    t.set_meta("rows_outside_asymptotic_regime", skipped);
    return t;
}

// ---------------------------------------------------------- zeta-compare ----

struct ZetaConfig {
    Common common;
    std::string zeros_path;
    int n_from = 10;
    int n_to = 100;
};

inline double median(std::vector<double> v) {
    if (v.empty()) return std::nan("");
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

/// Columns N, y_true, y_est, rel_err; the median rel_err goes into the
/// metadata. The comparison always runs at eps^2 = 1/(8 pi).
inline table::ResultTable zeta_compare(const ZetaConfig& cfg) {
    if (cfg.n_from < 3) throw domain_error("zeta-compare needs n-from >= 3");
    if (cfg.n_to < cfg.n_from) throw domain_error("need n-from <= n-to");
    const auto zeros = semiclassical::load_zeros(cfg.zeros_path);
    const auto rows = semiclassical::compare_zeros(zeros, cfg.n_from, cfg.n_to);

    Common c = cfg.common;
    c.epsilon = semiclassical::zeta_params().epsilon();
    auto t = make_table({"N", "y_true", "y_est", "rel_err"}, c, "zeta-compare");
    t.set_meta("zeros_file", cfg.zeros_path);
    std::vector<double> errs;
    for (const auto& r : rows) {
        t.add_row({static_cast<long long>(r.N), r.y_true, r.y_est, r.rel_err});
        errs.push_back(r.rel_err);
    }
    t.set_meta("median_rel_err", median(errs));
    return t;
}

}  // namespace born::commands
