#include "dicke/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "dicke/errors.hpp"
#include "dicke/sweep.hpp"
#include "dicke/table_io.hpp"
#include "dicke/variational.hpp"

namespace dicke {

namespace {

enum class Mode { sweep, fig1, fig2, compare, exact };

// Raw option values for one subcommand, pre-filled with that subcommand's defaults.
struct Options {
    Mode mode;
    double omega;
    double Omega;
    std::vector<int> n_atoms;
    std::string variant;
    double g_start;
    double g_stop;
    int g_count;
    std::string out;
    std::string format;
    double cutoff_tol;
    int max_cutoff;
    int threads;
    std::vector<std::string> observables;
};

SweepSpec default_spec(Mode mode) {
    switch (mode) {
        case Mode::fig1: return fig1_spec();
        case Mode::fig2: return fig2_spec();
        case Mode::compare: return compare_spec();
        case Mode::exact: {
            SweepSpec spec;
            spec.n_atoms = {4};
            spec.grid = {0.0, 2.0, 11};
            spec.observables = {Observable::exact_energy, Observable::exact_jz, Observable::exact_photons};
            spec.output = "exact";
            return spec;
        }
        case Mode::sweep: {
            SweepSpec spec;
            spec.observables = {Observable::e_minus, Observable::e_plus, Observable::jz,
                                Observable::intensity, Observable::gamma, Observable::dgamma_dg};
            return spec;
        }
    }
    return {};
}

std::string format_name(OutputFormat f) {
    switch (f) {
        case OutputFormat::csv: return "csv";
        case OutputFormat::svg: return "svg";
        case OutputFormat::both: return "both";
    }
    return "csv";
}

Options defaults_for(Mode mode) {
    const SweepSpec spec = default_spec(mode);
    Options o{mode,
              spec.omega,
              spec.Omega,
              spec.n_atoms,
              std::string(to_string(spec.variants.front())),
              spec.grid.start,
              spec.grid.stop,
              spec.grid.count,
              spec.output,
              format_name(spec.format),
              spec.policy.energy_tol,
              spec.policy.max_cutoff,
              static_cast<int>(std::max(1u, std::thread::hardware_concurrency())),
              {}};
    for (Observable obs : spec.observables) o.observables.emplace_back(to_string(obs));
    return o;
}

void add_common(CLI::App& sub, Options& o) {
    sub.add_option("--omega", o.omega, "boson mode frequency")->capture_default_str();
    sub.add_option("--Omega", o.Omega, "atomic level spacing")->capture_default_str();
    sub.add_option("--n-atoms", o.n_atoms, "atom count(s), comma separated")->delimiter(',')->capture_default_str();
    sub.add_option("--variant", o.variant, "full, rwa or both")
        ->check(CLI::IsMember({"full", "rwa", "both"}))
        ->capture_default_str();
    sub.add_option("--g-start", o.g_start, "first coupling")->capture_default_str();
    sub.add_option("--g-stop", o.g_stop, "last coupling")->capture_default_str();
    sub.add_option("--g-count", o.g_count, "number of grid points")->capture_default_str();
    sub.add_option("--out", o.out, "output path prefix")->capture_default_str();
    sub.add_option("--format", o.format, "csv, svg or both")
        ->check(CLI::IsMember({"csv", "svg", "both"}))
        ->capture_default_str();
    sub.add_option("--cutoff-tol", o.cutoff_tol, "exact solver convergence tolerance per atom")
        ->capture_default_str();
    sub.add_option("--max-cutoff", o.max_cutoff, "largest Fock cutoff tried")->capture_default_str();
    sub.add_option("--threads", o.threads, "worker threads")->envname("DICKE_THREADS")->capture_default_str();
}

SweepSpec to_spec(const Options& o) {
    SweepSpec spec = default_spec(o.mode);
    spec.omega = o.omega;
    spec.Omega = o.Omega;
    spec.n_atoms = o.n_atoms;
    if (o.variant == "both")
        spec.variants = {Variant::full, Variant::rwa};
    else
        spec.variants = {parse_variant(o.variant)};
    spec.grid = {o.g_start, o.g_stop, o.g_count};
    spec.output = o.out;
    spec.format = parse_format(o.format);
    spec.policy.energy_tol = o.cutoff_tol;
    spec.policy.max_cutoff = o.max_cutoff;
    spec.threads = o.threads;
    spec.observables.clear();
    for (const auto& name : o.observables)
        if (!name.empty()) spec.observables.push_back(parse_observable(name));
    validate(spec);
    return spec;
}

PanelSpec generic_panel(const SweepSpec& spec, double critical) {
    PanelSpec panel;
    panel.y_label = "per atom";
    for (Observable o : spec.observables) {
        const std::string name(to_string(o));
        panel.curves.push_back({name + "_per_atom", name + "/N", false});
    }
    panel.markers = {critical};
    return panel;
}

void write_outputs(const SweepSpec& spec, Mode mode, const std::vector<SweepTable>& tables,
                   const std::vector<std::pair<Variant, int>>& keys) {
    const bool single = tables.size() == 1;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        const auto [variant, n] = keys[i];
        const std::string stem =
            single ? spec.output : spec.output + "_" + std::string(to_string(variant)) + "_N" + std::to_string(n);
        if (spec.format != OutputFormat::svg) {
            emit_csv(tables[i], stem + ".csv");
            std::cout << stem << ".csv\n";
        }
        if (spec.format != OutputFormat::csv) {
            const double gc = critical_coupling(ModelParams{spec.omega, spec.Omega, 0.0, n}, variant);
            PanelSpec panel = mode == Mode::fig1   ? fig1_panel(gc)
                              : mode == Mode::fig2 ? fig2_panel(gc)
                                                   : generic_panel(spec, gc);
            if (spec.observables.empty()) throw SpecificationError("no observables to plot");
            emit_svg(tables[i], stem + ".svg", panel);
            std::cout << stem << ".svg\n";
        }
    }
}

int execute(const Options& o) {
    const SweepSpec spec = to_spec(o);
    if (o.mode == Mode::compare) {
        const CompareReport report = compare_report(spec);
        const std::string path = spec.output + ".csv";
        emit_csv(report.table, path);
        std::cout << path << "\n";
        std::cout << "rows = " << report.summary.rows << "\n"
                  << "rayleigh_ritz = " << (report.summary.rayleigh_ritz_ok ? "ok" : "violated") << "\n"
                  << "max_gap_per_atom = " << format_double(report.summary.max_gap_per_atom) << "\n"
                  << "min_gap = " << format_double(report.summary.min_gap) << "\n";
        return report.summary.rayleigh_ritz_ok ? exit_ok : exit_convergence;
    }
    std::vector<std::pair<Variant, int>> keys;
    for (Variant v : spec.variants)
        for (int n : spec.n_atoms) keys.emplace_back(v, n);
    const std::vector<SweepTable> tables = run_sweep(spec);
    write_outputs(spec, o.mode, tables, keys);
    return exit_ok;
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::validation: return exit_validation;
        case ErrorKind::convergence:
        case ErrorKind::numeric: return exit_convergence;
        case ErrorKind::io: return exit_io;
        case ErrorKind::resource: return exit_resource;
        case ErrorKind::specification: return exit_specification;
    }
    return exit_internal;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Dicke model macroscopic quantum states: closed forms, sweeps and exact diagonalization", "dicke"};
    app.set_config("--config", "", "key = value config file; command-line flags win");
    app.fallthrough();
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version));

    const std::pair<Mode, const char*> commands[] = {
        {Mode::sweep, "sweep"}, {Mode::fig1, "fig1"}, {Mode::fig2, "fig2"},
        {Mode::compare, "compare"}, {Mode::exact, "exact"},
    };
    const char* help[] = {
        "closed-form observables over a g grid",
        "energy branches and <Jz> per atom (CSV + SVG)",
        "geometric phase and its derivative per atom (CSV + SVG)",
        "variational vs exact ground state over N and g",
        "exact ground-state observables over a g grid",
    };

    std::vector<Options> options;
    options.reserve(std::size(commands));
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < std::size(commands); ++i) {
        options.push_back(defaults_for(commands[i].first));
        CLI::App* sub = app.add_subcommand(commands[i].second, help[i]);
        add_common(*sub, options.back());
        if (commands[i].first == Mode::sweep) {
            sub->add_option("--observables", options.back().observables, "comma separated observable names")
                ->delimiter(',')
                ->capture_default_str();
        }
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::FileError& e) {
        std::cerr << e.what() << "\n";
        return exit_io;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_validation;
    }

    try {
        for (std::size_t i = 0; i < subs.size(); ++i)
            if (subs[i]->parsed()) return execute(options[i]);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_internal;
}

}  // namespace dicke
