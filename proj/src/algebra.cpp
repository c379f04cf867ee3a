#include "dicke/algebra.hpp"

#include <cmath>
#include <complex>

#include "dicke/errors.hpp"

namespace dicke {

SpinAlgebra spin_matrices(int n_atoms) {
    if (n_atoms < 1) throw ValidationError("n_atoms", "must be >= 1");
    const int dim = n_atoms + 1;
    const double s = 0.5 * n_atoms;

    SpinAlgebra out;
    out.dim = dim;
    out.jz = ComplexMatrix::Zero(dim, dim);
    out.jplus = ComplexMatrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        const double m = s - k;
        out.jz(k, k) = m;
        // J+ |s,m> = sqrt(s(s+1) - m(m+1)) |s,m+1>, and m+1 sits at index k-1.
        if (k > 0) out.jplus(k - 1, k) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
    }
    out.jminus = out.jplus.adjoint();
    out.jx = 0.5 * (out.jplus + out.jminus);
    out.jy = std::complex<double>(0.0, -0.5) * (out.jplus - out.jminus);
    return out;
}

BosonAlgebra boson_matrices(int cutoff) {
    if (cutoff < 1) throw ValidationError("cutoff", "must be >= 1");
    const int dim = cutoff + 1;
    BosonAlgebra out;
    out.cutoff = cutoff;
    out.a = RealMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) out.a(n - 1, n) = std::sqrt(static_cast<double>(n));
    out.adag = out.a.transpose();
    out.number_op = RealVector::LinSpaced(dim, 0.0, cutoff).asDiagonal();
    return out;
}

}  // namespace dicke
