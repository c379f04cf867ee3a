#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dicke/exact.hpp"
#include "dicke/params.hpp"

namespace dicke {

enum class Observable {
    e_minus,
    e_plus,
    jz,
    intensity,
    gamma,
    dgamma_dg,
    exact_energy,
    exact_jz,
    exact_photons,
};

std::string_view to_string(Observable o);
Observable parse_observable(std::string_view text);
bool is_exact(Observable o);

enum class OutputFormat { csv, svg, both };
OutputFormat parse_format(std::string_view text);

struct GGrid {
    double start = 0.0;
    double stop = 2.0;
    int count = 201;
};

/// start + (stop - start) i / (count - 1); the last point is `stop` exactly.
std::vector<double> grid_points(const GGrid& grid);

struct SweepSpec {
    std::vector<Variant> variants{Variant::full};
    double omega = 1.0;
    double Omega = 1.0;
    std::vector<int> n_atoms{1};
    GGrid grid;
    std::vector<Observable> observables;
    std::string output = "sweep";
    OutputFormat format = OutputFormat::csv;
    CutoffPolicy policy;
    int threads = 1;
};

void validate(const SweepSpec& spec);

/// Column-named, row-major numeric table plus ordered metadata.
struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    std::optional<std::size_t> column_index(std::string_view name) const;
    std::vector<double> column(std::string_view name) const;  ///< throws SpecificationError
    std::string meta(std::string_view key) const;              ///< "" when absent
};

inline constexpr std::string_view tool_version = "0.3.1";

/// One table per (variant, N) in spec order. Each table has a `g` column,
/// then each requested observable followed by its `<name>_per_atom` column.
/// On failure the error names the offending g; no partial tables are returned.
std::vector<SweepTable> run_sweep(const SweepSpec& spec);

/// Single (variant, N) sweep.
SweepTable run_sweep_one(const SweepSpec& spec, Variant variant, int n_atoms);

struct CompareSummary {
    bool rayleigh_ritz_ok = true;
    double max_gap_per_atom = 0.0;
    double min_gap = 0.0;
    std::size_t rows = 0;
};

struct CompareReport {
    SweepTable table;  ///< rows ordered by (N, g)
    CompareSummary summary;
};

/// Variational vs exact ground-state observables for every (N, g) of the
/// spec's first variant.
CompareReport compare_report(const SweepSpec& spec);

SweepSpec fig1_spec();
SweepSpec fig2_spec();
SweepSpec compare_spec();

/// Runs fn(i) for i in [0, count) on at most `threads` workers. The first
/// exception by index is rethrown after all workers finish.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace dicke
