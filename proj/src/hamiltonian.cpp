#include "dicke/hamiltonian.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "dicke/errors.hpp"

namespace dicke {

long product_dimension(int n_atoms, int cutoff) {
    return static_cast<long>(cutoff + 1) * static_cast<long>(n_atoms + 1);
}

RealMatrix build_hamiltonian(const ModelParams& p, Variant variant, int cutoff, long max_dimension) {
    validate(p);
    if (cutoff < 1) throw ValidationError("cutoff", "must be >= 1");
    const long dim = product_dimension(p.n_atoms, cutoff);
    if (dim > max_dimension) {
        throw ResourceError("Hamiltonian dimension " + std::to_string(dim) + " exceeds limit " +
                            std::to_string(max_dimension));
    }

    const SpinAlgebra spin = spin_matrices(p.n_atoms);
    const BosonAlgebra boson = boson_matrices(cutoff);
    const std::complex<double> i_unit(0.0, 1.0);
    const double root_n = std::sqrt(static_cast<double>(p.n_atoms));

    // Each term is coefficient * boson_factor (x) spin_factor.
    struct Term {
        std::complex<double> coef;
        ComplexMatrix boson_factor;
        ComplexMatrix spin_factor;
    };
    const ComplexMatrix spin_id = ComplexMatrix::Identity(spin.dim, spin.dim);
    const ComplexMatrix boson_id = ComplexMatrix::Identity(boson.dim(), boson.dim());
    const ComplexMatrix quadrature = (boson.a + boson.adag).cast<std::complex<double>>();

    std::vector<Term> terms;
    terms.push_back({p.omega, boson.number_op.cast<std::complex<double>>(), spin_id});
    terms.push_back({p.Omega, boson_id, spin.jz});
    if (variant == Variant::full) {
        terms.push_back({p.g / root_n, quadrature, spin.jx});
    } else {
        const double c = p.g / (2.0 * root_n);
        terms.push_back({c, quadrature, spin.jx});
        terms.push_back({c, i_unit * (boson.a - boson.adag).cast<std::complex<double>>(), spin.jy});
    }

    // Assemble one Fock block at a time so only the real result is dense.
    RealMatrix h = RealMatrix::Zero(dim, dim);
    ComplexMatrix block(spin.dim, spin.dim);
    for (int n = 0; n < boson.dim(); ++n) {
        for (int m = 0; m < boson.dim(); ++m) {
            bool touched = false;
            block.setZero();
            for (const Term& t : terms) {
                const std::complex<double> b = t.boson_factor(n, m);
                if (b == 0.0) continue;
                block += (t.coef * b) * t.spin_factor;
                touched = true;
            }
            if (!touched) continue;
            const double imag = block.imag().cwiseAbs().maxCoeff();
            if (imag != 0.0) {
                throw Error(ErrorKind::numeric,
                            "Hamiltonian assembly left an imaginary part of " + std::to_string(imag));
            }
            h.block(static_cast<long>(n) * spin.dim, static_cast<long>(m) * spin.dim, spin.dim, spin.dim) =
                block.real();
        }
    }
    return h;
}

RealVector excitation_number(int n_atoms, int cutoff) {
    RealVector out(product_dimension(n_atoms, cutoff));
    for (int n = 0; n <= cutoff; ++n)
        for (int k = 0; k <= n_atoms; ++k) out(product_index(n_atoms, n, k)) = n + (n_atoms - k);
    return out;
}

RealVector parity(int n_atoms, int cutoff) {
    RealVector ex = excitation_number(n_atoms, cutoff);
    return ex.unaryExpr([](double x) { return (static_cast<long>(x) % 2 == 0) ? 1.0 : -1.0; });
}

}  // namespace dicke
