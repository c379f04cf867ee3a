#include "dicke/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "dicke/errors.hpp"
#include "dicke/table_io.hpp"
#include "dicke/variational.hpp"

namespace dicke {

namespace {

constexpr Observable all_observables[] = {
    Observable::e_minus,      Observable::e_plus,   Observable::jz,
    Observable::intensity,    Observable::gamma,    Observable::dgamma_dg,
    Observable::exact_energy, Observable::exact_jz, Observable::exact_photons,
};

// Offset applied to grid points that land exactly on g_c when one-sided
// derivative columns are requested.
constexpr double critical_nudge = 1e-12;

bool wants(const SweepSpec& spec, Observable o) {
    return std::find(spec.observables.begin(), spec.observables.end(), o) != spec.observables.end();
}

bool wants_exact(const SweepSpec& spec) {
    return std::any_of(spec.observables.begin(), spec.observables.end(), is_exact);
}

std::string join_ints(const std::vector<int>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
    return out;
}

void add_common_metadata(SweepTable& table, const SweepSpec& spec, Variant variant, const std::string& n_atoms) {
    const ModelParams unit{spec.omega, spec.Omega, 0.0, 1};
    table.metadata = {
        {"tool", "dicke"},
        {"version", std::string(tool_version)},
        {"variant", std::string(to_string(variant))},
        {"omega", format_double(spec.omega)},
        {"Omega", format_double(spec.Omega)},
        {"n_atoms", n_atoms},
        {"g_c", format_double(critical_coupling(unit, variant))},
        {"g_grid", format_double(spec.grid.start) + ":" + format_double(spec.grid.stop) + ":" +
                       std::to_string(spec.grid.count)},
        {"energy_abs_tol_per_atom", "1e-10"},
        {"relative_tol", "1e-8"},
    };
}

// Re-raises a library error with the offending coupling in the message.
[[noreturn]] void rethrow_at(const Error& e, double g) {
    throw Error(e.kind(), "at g = " + format_double(g) + ": " + e.what());
}

}  // namespace

std::string_view to_string(Observable o) {
    switch (o) {
        case Observable::e_minus: return "e_minus";
        case Observable::e_plus: return "e_plus";
        case Observable::jz: return "jz";
        case Observable::intensity: return "intensity";
        case Observable::gamma: return "gamma";
        case Observable::dgamma_dg: return "dgamma_dg";
        case Observable::exact_energy: return "exact_energy";
        case Observable::exact_jz: return "exact_jz";
        case Observable::exact_photons: return "exact_photons";
    }
    return "?";
}

Observable parse_observable(std::string_view text) {
    for (Observable o : all_observables)
        if (to_string(o) == text) return o;
    throw ValidationError("observables", "unknown observable '" + std::string(text) + "'");
}

bool is_exact(Observable o) {
    return o == Observable::exact_energy || o == Observable::exact_jz || o == Observable::exact_photons;
}

OutputFormat parse_format(std::string_view text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "svg") return OutputFormat::svg;
    if (text == "both") return OutputFormat::both;
    throw ValidationError("format", "expected csv, svg or both");
}

std::vector<double> grid_points(const GGrid& grid) {
    std::vector<double> out(grid.count);
    const double span = grid.stop - grid.start;
    for (int i = 0; i < grid.count; ++i) out[i] = grid.start + span * i / (grid.count - 1);
    out.back() = grid.stop;
    return out;
}

void validate(const SweepSpec& spec) {
    if (spec.variants.empty()) throw ValidationError("variant", "at least one variant required");
    if (spec.n_atoms.empty()) throw ValidationError("n_atoms", "at least one atom count required");
    for (int n : spec.n_atoms) validate(ModelParams{spec.omega, spec.Omega, 0.0, n});
    if (!std::isfinite(spec.grid.start) || spec.grid.start < 0.0) throw ValidationError("g_start", "must be >= 0");
    if (!std::isfinite(spec.grid.stop) || !(spec.grid.stop > spec.grid.start))
        throw ValidationError("g_stop", "must exceed g_start");
    if (spec.grid.count < 2) throw ValidationError("g_count", "must be >= 2");
    if (spec.threads < 1) throw ValidationError("threads", "must be >= 1");
    validate(spec.policy);
}

std::optional<std::size_t> SweepTable::column_index(std::string_view name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) return std::nullopt;
    return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> SweepTable::column(std::string_view name) const {
    const auto idx = column_index(name);
    if (!idx) throw SpecificationError("table has no column '" + std::string(name) + "'");
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row[*idx]);
    return out;
}

std::string SweepTable::meta(std::string_view key) const {
    for (const auto& [k, v] : metadata)
        if (k == key) return v;
    return {};
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), std::max<std::size_t>(count, 1));
    std::atomic<std::size_t> next{0};
    std::mutex guard;
    std::size_t failed_index = count;
    std::exception_ptr failure;

    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(guard);
                if (i < failed_index) {
                    failed_index = i;
                    failure = std::current_exception();
                }
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
}

SweepTable run_sweep_one(const SweepSpec& spec, Variant variant, int n_atoms) {
    validate(spec);
    const ModelParams base = make_params(spec.omega, spec.Omega, 0.0, n_atoms);
    const double gc = critical_coupling(base, variant);

    SweepTable table;
    add_common_metadata(table, spec, variant, std::to_string(n_atoms));

    std::vector<double> gs = grid_points(spec.grid);
    bool nudged = false;
    if (wants(spec, Observable::dgamma_dg)) {
        for (double& g : gs) {
            if (g == gc) {
                g += critical_nudge;
                nudged = true;
            }
        }
    }
    if (nudged) table.metadata.emplace_back("g_c_point", "shifted by +1e-12 for one-sided dgamma_dg");

    const StationaryField below = stationary_field(base, variant);
    ModelParams above = base;
    above.g = 2.0 * gc;
    table.metadata.emplace_back("degeneracy", "normal: " + std::string(to_string(below.degeneracy)) +
                                                   "; superradiant: " +
                                                   std::string(to_string(stationary_field(above, variant).degeneracy)));
    if (wants(spec, Observable::jz)) table.metadata.emplace_back("jz_branch", "minus; plus-branch population unavailable");
    if (variant == Variant::rwa && (wants(spec, Observable::gamma) || wants(spec, Observable::dgamma_dg)))
        table.metadata.emplace_back("gamma_note", "extension: 2 pi |alpha|^2 with the RWA stationary photon number");
    if (wants_exact(spec)) {
        table.metadata.emplace_back("cutoff_tol", format_double(spec.policy.energy_tol));
        table.metadata.emplace_back("max_cutoff", std::to_string(spec.policy.max_cutoff));
    }

    table.columns.push_back("g");
    for (Observable o : spec.observables) {
        table.columns.emplace_back(to_string(o));
        table.columns.emplace_back(std::string(to_string(o)) + "_per_atom");
    }

    const double n = n_atoms;
    table.rows.assign(gs.size(), {});
    parallel_for(gs.size(), spec.threads, [&](std::size_t i) {
        ModelParams p = base;
        p.g = gs[i];
        try {
            std::optional<ExactResult> exact;
            if (wants_exact(spec)) exact = exact_ground(p, variant, spec.policy);
            const BranchResult ground = branch_energy(p, variant, Branch::minus);

            std::vector<double> row{p.g};
            for (Observable o : spec.observables) {
                double value = 0.0;
                switch (o) {
                    case Observable::e_minus: value = ground.energy; break;
                    case Observable::e_plus: value = branch_energy(p, variant, Branch::plus).energy; break;
                    case Observable::jz: value = *ground.jz; break;
                    case Observable::intensity: value = ground.field.intensity(); break;
                    case Observable::gamma: value = ground.gamma; break;
                    case Observable::dgamma_dg: value = gp_derivative(p, variant); break;
                    case Observable::exact_energy: value = exact->energy; break;
                    case Observable::exact_jz: value = exact->jz; break;
                    case Observable::exact_photons: value = exact->photons; break;
                }
                row.push_back(value);
                row.push_back(value / n);
            }
            table.rows[i] = std::move(row);
        } catch (const Error& e) {
            rethrow_at(e, p.g);
        }
    });
    return table;
}

std::vector<SweepTable> run_sweep(const SweepSpec& spec) {
    validate(spec);
    std::vector<SweepTable> out;
    for (Variant variant : spec.variants)
        for (int n : spec.n_atoms) out.push_back(run_sweep_one(spec, variant, n));
    return out;
}

CompareReport compare_report(const SweepSpec& spec) {
    validate(spec);
    const Variant variant = spec.variants.front();
    const std::vector<double> gs = grid_points(spec.grid);

    CompareReport report;
    SweepTable& table = report.table;
    add_common_metadata(table, spec, variant, join_ints(spec.n_atoms));
    table.metadata.emplace_back("cutoff_tol", format_double(spec.policy.energy_tol));
    table.metadata.emplace_back("max_cutoff", std::to_string(spec.policy.max_cutoff));
    table.metadata.emplace_back("row_order", "n_atoms, then g");
    table.columns = {"n_atoms",     "g",           "var_energy_per_atom", "exact_energy_per_atom",
                     "gap",         "gap_per_atom", "var_jz",             "exact_jz",
                     "jz_diff",     "var_photons",  "exact_photons",      "photons_diff",
                     "cutoff_used", "near_degenerate"};

    const std::size_t per_n = gs.size();
    table.rows.assign(spec.n_atoms.size() * per_n, {});
    parallel_for(table.rows.size(), spec.threads, [&](std::size_t idx) {
        const int n_atoms = spec.n_atoms[idx / per_n];
        const ModelParams p = make_params(spec.omega, spec.Omega, gs[idx % per_n], n_atoms);
        try {
            const ExactResult exact = exact_ground(p, variant, spec.policy);
            const BranchResult var = branch_energy(p, variant, Branch::minus);
            const double photons = var.field.intensity();
            table.rows[idx] = {static_cast<double>(n_atoms),
                               p.g,
                               var.energy_per_atom,
                               exact.energy_per_atom,
                               var.energy - exact.energy,
                               var.energy_per_atom - exact.energy_per_atom,
                               *var.jz,
                               exact.jz,
                               *var.jz - exact.jz,
                               photons,
                               exact.photons,
                               photons - exact.photons,
                               static_cast<double>(exact.cutoff_used),
                               exact.near_degenerate ? 1.0 : 0.0};
        } catch (const Error& e) {
            rethrow_at(e, p.g);
        }
    });

    CompareSummary& summary = report.summary;
    summary.rows = table.rows.size();
    summary.min_gap = std::numeric_limits<double>::infinity();
    summary.max_gap_per_atom = -std::numeric_limits<double>::infinity();
    for (const auto& row : table.rows) {
        summary.min_gap = std::min(summary.min_gap, row[4]);
        summary.max_gap_per_atom = std::max(summary.max_gap_per_atom, row[5]);
    }
    summary.rayleigh_ritz_ok = summary.min_gap >= -1e-8;
    table.metadata.emplace_back("rayleigh_ritz", summary.rayleigh_ritz_ok ? "ok" : "violated");
    table.metadata.emplace_back("max_gap_per_atom", format_double(summary.max_gap_per_atom));
    table.metadata.emplace_back("min_gap", format_double(summary.min_gap));
    return report;
}

SweepSpec fig1_spec() {
    SweepSpec spec;
    spec.observables = {Observable::e_minus, Observable::e_plus, Observable::jz};
    spec.output = "fig1";
    spec.format = OutputFormat::both;
    return spec;
}

SweepSpec fig2_spec() {
    SweepSpec spec;
    spec.observables = {Observable::gamma, Observable::dgamma_dg};
    spec.output = "fig2";
    spec.format = OutputFormat::both;
    return spec;
}

SweepSpec compare_spec() {
    SweepSpec spec;
    spec.n_atoms = {4, 8, 16, 32};
    spec.grid = {0.0, 2.0, 5};
    spec.observables = {Observable::exact_energy, Observable::exact_jz, Observable::exact_photons};
    spec.output = "compare";
    return spec;
}

}  // namespace dicke
