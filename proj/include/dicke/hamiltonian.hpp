#pragma once

#include "dicke/algebra.hpp"
#include "dicke/params.hpp"

namespace dicke {

inline constexpr long default_max_dimension = 20000;

/// Dimension (cutoff+1)(N+1) of the truncated boson x spin space.
long product_dimension(int n_atoms, int cutoff);

/// Index of |n> x |s, s-k> in the Fock-major product basis.
inline long product_index(int n_atoms, int n, int k) { return static_cast<long>(n) * (n_atoms + 1) + k; }

/// Dicke Hamiltonian in the truncated Fock-major basis.
///
///   H = omega a^dag a x 1 + 1 x Omega J_z + coupling
///
/// with coupling (g/sqrt N)(a + a^dag) x J_x for Variant::full and
/// (g/2 sqrt N)[(a + a^dag) x J_x + i(a - a^dag) x J_y] for Variant::rwa.
/// The result is real symmetric in this basis; the builder checks that the
/// imaginary part of the complex assembly vanishes before dropping it.
/// Throws ResourceError when the dimension exceeds `max_dimension`.
RealMatrix build_hamiltonian(const ModelParams& p, Variant variant, int cutoff,
                             long max_dimension = default_max_dimension);

/// Total excitation number a^dag a x 1 + 1 x (J_z + s), diagonal.
RealVector excitation_number(int n_atoms, int cutoff);

/// Parity exp(i pi N_ex) = (-1)^N_ex, diagonal.
RealVector parity(int n_atoms, int cutoff);

}  // namespace dicke
