#include "dicke/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <lapacke.h>

#include "dicke/errors.hpp"
#include "dicke/variational.hpp"

namespace dicke {

void validate(const CutoffPolicy& policy) {
    if (policy.initial && *policy.initial < 1) throw ValidationError("initial", "must be >= 1");
    if (!(policy.growth > 1.0)) throw ValidationError("growth", "must be > 1");
    if (!(policy.energy_tol > 0.0)) throw ValidationError("energy_tol", "must be > 0");
    if (policy.max_cutoff < 1) throw ValidationError("max_cutoff", "must be >= 1");
    if (policy.max_dimension < 1) throw ValidationError("max_dimension", "must be >= 1");
}

int initial_cutoff(const ModelParams& p, Variant variant, const CutoffPolicy& policy) {
    const int seeded =
        policy.initial ? *policy.initial : static_cast<int>(std::ceil(stationary_intensity(p, variant))) + 20;
    return std::min(seeded, policy.max_cutoff);
}

Eigenpairs lowest_eigenpairs(const RealMatrix& h, int k) {
    const auto n = static_cast<lapack_int>(h.rows());
    if (h.cols() != h.rows() || n == 0) throw ValidationError("matrix", "must be square and non-empty");
    if (k < 1 || k > n) throw ValidationError("k", "must lie in [1, dimension]");

    RealMatrix work = h;  // dsyevr overwrites its input
    RealVector values(n);
    RealMatrix vectors(n, k);
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(k));
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, work.data(), n, 0.0, 0.0, 1, k,
                                           0.0, &found, values.data(), vectors.data(), n, support.data());
    if (info != 0 || found != k)
        throw Error(ErrorKind::numeric, "dsyevr failed with info " + std::to_string(info));

    Eigenpairs out;
    out.values = values.head(k);
    out.vectors = std::move(vectors);
    out.residuals.resize(k);
    for (int i = 0; i < k; ++i)
        out.residuals(i) = (h * out.vectors.col(i) - out.values(i) * out.vectors.col(i)).norm();
    return out;
}

namespace {

int next_cutoff(int cutoff, const CutoffPolicy& policy) {
    const int grown = static_cast<int>(std::ceil(cutoff * policy.growth));
    return std::min(std::max(grown, cutoff + 1), policy.max_cutoff);
}

std::string describe(const std::vector<std::pair<int, double>>& trace) {
    std::ostringstream os;
    os.precision(12);
    for (const auto& [cutoff, e] : trace) os << " [" << cutoff << ": " << e << "]";
    return os.str();
}

[[noreturn]] void fail_convergence(const std::string& why, std::vector<std::pair<int, double>> trace) {
    throw ConvergenceError(why + "; trace:" + describe(trace), std::move(trace));
}

// Runs the cutoff ladder, calling solve(cutoff) -> energies per atom, until
// successive results agree. Returns the accepted cutoff.
template <typename Solve>
int converge(const ModelParams& p, Variant variant, const CutoffPolicy& policy, int min_dimension,
             std::vector<std::pair<int, double>>& trace, Solve&& solve) {
    int cutoff = std::max(1, initial_cutoff(p, variant, policy));
    while (product_dimension(p.n_atoms, cutoff) < min_dimension && cutoff < policy.max_cutoff) ++cutoff;

    std::vector<double> previous;
    while (true) {
        if (product_dimension(p.n_atoms, cutoff) > policy.max_dimension)
            fail_convergence("cutoff " + std::to_string(cutoff) + " exceeds the dimension limit", trace);
        std::vector<double> current = solve(cutoff);
        trace.emplace_back(cutoff, current.front());
        if (!previous.empty()) {
            double change = 0.0;
            for (std::size_t i = 0; i < current.size(); ++i)
                change = std::max(change, std::abs(current[i] - previous[i]));
            if (change < policy.energy_tol) return cutoff;
        }
        if (cutoff >= policy.max_cutoff)
            fail_convergence("max_cutoff " + std::to_string(policy.max_cutoff) + " reached", trace);
        previous = std::move(current);
        cutoff = next_cutoff(cutoff, policy);
    }
}

void check_residual(double residual, double energy) {
    if (!(residual < 1e-8 * std::max(1.0, std::abs(energy))))
        throw Error(ErrorKind::numeric, "eigen residual " + std::to_string(residual) + " too large");
}

}  // namespace

ExactResult exact_ground(const ModelParams& p, Variant variant, const CutoffPolicy& policy) {
    validate(p);
    validate(policy);
    const double n = p.n_atoms;

    ExactResult out;
    Eigenpairs last;
    converge(p, variant, policy, 1, out.trace, [&](int cutoff) {
        const RealMatrix h = build_hamiltonian(p, variant, cutoff, policy.max_dimension);
        last = lowest_eigenpairs(h, std::min<int>(2, static_cast<int>(h.rows())));
        out.cutoff_used = cutoff;
        return std::vector<double>{last.values(0) / n};
    });

    const RealVector ground = last.vectors.col(0);
    out.energy = last.values(0);
    out.energy_per_atom = out.energy / n;
    out.eigen_residual = last.residuals(0);
    check_residual(out.eigen_residual, out.energy);
    out.converged = true;
    out.gap = last.values.size() > 1 ? last.values(1) - last.values(0) : std::numeric_limits<double>::quiet_NaN();
    out.near_degenerate = last.values.size() > 1 && out.gap < degeneracy_threshold;

    const int spin_dim = p.n_atoms + 1;
    const double s = p.spin();
    for (Eigen::Index i = 0; i < ground.size(); ++i) {
        const double weight = ground(i) * ground(i);
        out.photons += weight * static_cast<double>(i / spin_dim);
        out.jz += weight * (s - static_cast<double>(i % spin_dim));
    }
    return out;
}

Spectrum low_spectrum(const ModelParams& p, Variant variant, int k, const CutoffPolicy& policy) {
    validate(p);
    validate(policy);
    if (k < 1 || k > product_dimension(p.n_atoms, policy.max_cutoff))
        throw ValidationError("k", "must lie in [1, dimension at max_cutoff]");

    Spectrum out;
    Eigenpairs last;
    std::vector<std::pair<int, double>> trace;
    const double n = p.n_atoms;
    converge(p, variant, policy, k, trace, [&](int cutoff) {
        last = lowest_eigenpairs(build_hamiltonian(p, variant, cutoff, policy.max_dimension), k);
        out.cutoff_used = cutoff;
        std::vector<double> per_atom(k);
        for (int i = 0; i < k; ++i) per_atom[i] = last.values(i) / n;
        return per_atom;
    });
    for (int i = 0; i < k; ++i) {
        check_residual(last.residuals(i), last.values(i));
        out.values.push_back(last.values(i));
        out.residuals.push_back(last.residuals(i));
    }
    return out;
}

std::vector<ScanRow> convergence_scan(const ModelParams& base, Variant variant, const std::vector<int>& n_atoms_list,
                                      const CutoffPolicy& policy) {
    if (n_atoms_list.empty()) throw ValidationError("n_atoms_list", "must not be empty");
    std::vector<ScanRow> rows;
    for (int n_atoms : n_atoms_list) {
        ModelParams p = base;
        p.n_atoms = n_atoms;
        validate(p);
        const ExactResult exact = exact_ground(p, variant, policy);
        const double variational = branch_energy(p, variant, Branch::minus).energy;
        const double gap = variational - exact.energy;
        rows.push_back({n_atoms, exact.energy_per_atom, variational / n_atoms, gap, gap / n_atoms, exact.cutoff_used});
    }
    return rows;
}

}  // namespace dicke
