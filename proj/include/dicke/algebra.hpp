#pragma once

#include <Eigen/Dense>

namespace dicke {

using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Collective pseudo-spin s = N/2 in the |s,m> basis, index k <-> m = s - k.
struct SpinAlgebra {
    int dim = 0;
    ComplexMatrix jx, jy, jz, jplus, jminus;

    double spin() const noexcept { return 0.5 * (dim - 1); }
};

/// Fock space truncated at n <= cutoff.
struct BosonAlgebra {
    int cutoff = 0;
    RealMatrix a, adag, number_op;

    int dim() const noexcept { return cutoff + 1; }
};

SpinAlgebra spin_matrices(int n_atoms);
BosonAlgebra boson_matrices(int cutoff);

}  // namespace dicke
