// born-cli: command-line front end for the Born oscillator library.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "born/commands.hpp"
#include "born/ode.hpp"
#include "born/roots.hpp"
#include "born/semiclassical.hpp"
#include "born/weyl.hpp"

namespace {

enum Exit { ok = 0, usage = 2, numeric = 3, data = 4 };

std::string quote_arg(const std::string& a) {
    if (!a.empty() && a.find_first_of(" \t\n'\"\\$") == std::string::npos) return a;
    std::string out = "'";
    for (char c : a) {
        if (c == '\'')
            out += "'\\''";
        else
            out += c;
    }
    return out + "'";
}

std::string join_command_line(int argc, char** argv) {
    std::string s = "born-cli";
    for (int i = 1; i < argc; ++i) s += ' ' + quote_arg(argv[i]);
    return s;
}

struct Output {
    std::string format = "csv";
    std::string path;
};

void add_common(CLI::App* sub, born::commands::Common& c, Output& out) {
    sub->add_option("--epsilon", c.epsilon, "nonlinearity scale eps > 0")->capture_default_str();
    sub->add_option("--tol", c.tol, "tolerance in [1e-13, 1e-3]")
        ->check(CLI::Range(1e-13, 1e-3))
        ->capture_default_str();
    sub->add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--output", out.path, "output file (default: standard output)");
}

int emit(const born::table::ResultTable& t, const Output& out) {
    const auto fmt = out.format == "json" ? born::table::Format::json : born::table::Format::csv;
    const std::string text = born::table::render(t, fmt);
    if (out.path.empty()) {
        std::cout << text << std::flush;
        return std::cout ? ok : data;
    }
    std::ofstream f(out.path, std::ios::binary);
    f << text;
    f.close();
    if (!f) {
        std::cerr << "error: cannot write " << out.path << '\n';
        return data;
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    namespace cmd = born::commands;
    CLI::App app{"Born oscillator: classical, quantum and semiclassical computations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(cmd::version));

    Output out;
    const std::string cmdline = join_command_line(argc, argv);

    cmd::TrajectoryConfig traj;
    auto* s_traj = app.add_subcommand("trajectory", "integrate Hamilton's equations in scaled coordinates");
    add_common(s_traj, traj.common, out);
    s_traj->add_option("--q0", traj.q0, "initial scaled position")->capture_default_str();
    s_traj->add_option("--p0", traj.p0, "initial scaled momentum")->capture_default_str();
    s_traj->add_option("--t-end", traj.t_end, "final time")->capture_default_str();
    s_traj->add_option("--force", traj.force, "constant external force F")->capture_default_str();
    s_traj->add_option("--samples", traj.samples, "uniform output samples (0: every step)")->capture_default_str();

    cmd::PeriodScanConfig scan;
    auto* s_scan = app.add_subcommand("period-scan", "compare numeric, elliptic and asymptotic periods");
    add_common(s_scan, scan.common, out);
    s_scan->add_option("--e-from", scan.e_from, "lowest energy")->capture_default_str();
    s_scan->add_option("--e-to", scan.e_to, "highest energy")->capture_default_str();
    s_scan->add_option("--count", scan.count, "number of log-spaced energies")->capture_default_str();

    cmd::SpectrumConfig spec;
    std::string spec_method = "sector";
    auto* s_spec = app.add_subcommand("spectrum", "quantum spectrum of the Born oscillator");
    add_common(s_spec, spec.common, out);
    s_spec->add_option("--nmax", spec.nmax, "Fock truncation (highest retained state)")->capture_default_str();
    s_spec->add_option("--method", spec_method, "sector | weyl-grid")
        ->check(CLI::IsMember({"sector", "weyl-grid"}))
        ->capture_default_str();
    s_spec->add_flag("--all", spec.include_unconverged, "also list eigenvalues that did not converge");

    cmd::SemiclassicalConfig semi;
    std::string semi_ham = "born", semi_method = "quadrature";
    auto* s_semi = app.add_subcommand("semiclassical", "phase-space area quantization");
    add_common(s_semi, semi.common, out);
    s_semi->add_option("--n-from", semi.n_from, "first level")->capture_default_str();
    s_semi->add_option("--n-to", semi.n_to, "last level")->capture_default_str();
    s_semi->add_option("--hamiltonian", semi_ham, "born | logcosh")
        ->check(CLI::IsMember({"born", "logcosh"}))
        ->capture_default_str();
    s_semi->add_option("--method", semi_method, "area method for born: quadrature | elliptic")
        ->check(CLI::IsMember({"quadrature", "elliptic"}))
        ->capture_default_str();

    cmd::ZetaConfig zeta;
    auto* s_zeta = app.add_subcommand("zeta-compare", "compare level estimates with zeta zeros");
    add_common(s_zeta, zeta.common, out);
    s_zeta->add_option("--zeros", zeta.zeros_path, "zeros table (one value per line)")->required();
    s_zeta->add_option("--n-from", zeta.n_from, "first zero index (>= 3)")->capture_default_str();
    s_zeta->add_option("--n-to", zeta.n_to, "last zero index")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    for (auto* c : {&traj.common, &scan.common, &spec.common, &semi.common, &zeta.common}) c->command_line = cmdline;
    spec.method = spec_method == "sector" ? cmd::SpectrumMethod::sector : cmd::SpectrumMethod::weyl_grid;
    semi.hamiltonian = semi_ham == "born" ? cmd::Hamiltonian::born : cmd::Hamiltonian::logcosh;
    semi.method = semi_method == "elliptic" ? born::semiclassical::AreaMethod::elliptic
                                            : born::semiclassical::AreaMethod::quadrature;

    try {
        born::table::ResultTable t;
        if (s_traj->parsed())
            t = cmd::trajectory(traj);
        else if (s_scan->parsed())
            t = cmd::period_scan(scan);
        else if (s_spec->parsed())
            t = cmd::spectrum(spec);
        else if (s_semi->parsed())
            t = cmd::semiclassical_scan(semi);
        else
            t = cmd::zeta_compare(zeta);
        return emit(t, out);
    } catch (const born::semiclassical::zeros_parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return data;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return data;
    } catch (const born::roots::bracket_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return numeric;
    } catch (const born::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return numeric;
    }
}
