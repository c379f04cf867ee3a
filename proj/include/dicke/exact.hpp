#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dicke/algebra.hpp"
#include "dicke/hamiltonian.hpp"
#include "dicke/params.hpp"

namespace dicke {

struct CutoffPolicy {
    /// Starting n_max; when empty it is seeded from the variational photon
    /// number as ceil(|alpha|^2) + 20.
    std::optional<int> initial;
    double growth = 1.5;
    double energy_tol = 1e-8;  ///< on energy per atom between successive cutoffs
    int max_cutoff = 400;
    long max_dimension = default_max_dimension;
};

void validate(const CutoffPolicy& policy);

/// Cutoff the policy starts from for these parameters.
int initial_cutoff(const ModelParams& p, Variant variant, const CutoffPolicy& policy);

struct Eigenpairs {
    RealVector values;   ///< ascending
    RealMatrix vectors;  ///< columns, orthonormal
    RealVector residuals;
};

/// Lowest `k` eigenpairs of a dense real-symmetric matrix (LAPACK dsyevr).
Eigenpairs lowest_eigenpairs(const RealMatrix& h, int k);

struct ExactResult {
    double energy = 0.0;
    double energy_per_atom = 0.0;
    double jz = 0.0;
    double photons = 0.0;
    int cutoff_used = 0;
    double eigen_residual = 0.0;
    bool converged = false;
    /// Gap to the second level; NaN when the space is one-dimensional.
    double gap = 0.0;
    bool near_degenerate = false;
    std::vector<std::pair<int, double>> trace;  ///< (cutoff, energy per atom)
};

inline constexpr double degeneracy_threshold = 1e-6;

/// Ground state of the truncated Hamiltonian, growing the cutoff until
/// successive energies per atom agree to `policy.energy_tol`.
/// Throws ConvergenceError carrying the trace when max_cutoff is exhausted.
ExactResult exact_ground(const ModelParams& p, Variant variant, const CutoffPolicy& policy = {});

struct Spectrum {
    std::vector<double> values;
    std::vector<double> residuals;
    int cutoff_used = 0;
};

/// `k` lowest levels, converged jointly under the same cutoff rule.
Spectrum low_spectrum(const ModelParams& p, Variant variant, int k, const CutoffPolicy& policy = {});

struct ScanRow {
    int n_atoms;
    double exact_per_atom;
    double variational_per_atom;
    double gap;           ///< variational - exact, total
    double gap_per_atom;
    int cutoff_used;
};

/// Variational vs exact ground energy as a function of N at fixed omega, Omega, g.
/// `base.n_atoms` is ignored.
std::vector<ScanRow> convergence_scan(const ModelParams& base, Variant variant,
                                      const std::vector<int>& n_atoms_list,
                                      const CutoffPolicy& policy = {});

}  // namespace dicke
