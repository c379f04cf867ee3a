#pragma once

#include <complex>

#include "dicke/algebra.hpp"
#include "dicke/params.hpp"

namespace dicke {

/// Rotation R = exp(i theta m.J) with m = (sin phi, -cos phi, 0), by spectral
/// decomposition of the Hermitian generator m.J.
ComplexMatrix scs_rotation(const SpinAlgebra& spin, double theta, double phi);

/// Spin coherent state R|s, +-s>, eigenvector of J.n with eigenvalue +-s for
/// n = (sin theta cos phi, sin theta sin phi, cos theta).
ComplexVector build_scs(int n_atoms, double theta, double phi, Pole pole);

/// Smallest cutoff accepted by `build_coherent` for a given |alpha|^2.
int min_coherent_cutoff(double intensity);

/// Truncated Weyl state e^{-|a|^2/2} a^n / sqrt(n!), renormalized.
/// Throws ValidationError ("cutoff") when |alpha|^2 + 8 sqrt(|alpha|^2 + 1) > cutoff.
/// The vacuum is exact at any cutoff and is exempt from the guard.
ComplexVector build_coherent(std::complex<double> alpha, int cutoff);

/// |alpha> x |spin> in the Fock-major product basis.
ComplexVector product_state(const ComplexVector& boson, const ComplexVector& spin);

/// <psi|H|psi> for psi = |u + iv> x |+-n(theta, phi)>, fully numeric.
double trial_energy(const ModelParams& p, Variant variant, double u, double v, double theta,
                    double phi, Pole pole, int cutoff);

/// Spin moments in the frame aligned with n: J'_k = R J_k R^dag averaged over R|s,+-s>.
struct FrameUncertainty {
    double half_abs_jz;  ///< |<J'_z>| / 2
    double delta_jx;     ///< <(Delta J'_x)^2>^{1/2}
    double delta_jy;     ///< <(Delta J'_y)^2>^{1/2}
};

FrameUncertainty scs_frame_uncertainty(int n_atoms, double theta, double phi, Pole pole);

}  // namespace dicke
