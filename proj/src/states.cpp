#include "dicke/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "dicke/errors.hpp"
#include "dicke/hamiltonian.hpp"

namespace dicke {

namespace {

void check_angles(double theta, double phi) {
    if (!std::isfinite(theta) || theta < 0.0 || theta > std::numbers::pi)
        throw ValidationError("theta", "must lie in [0, pi]");
    if (!std::isfinite(phi) || phi < 0.0 || phi >= 2.0 * std::numbers::pi)
        throw ValidationError("phi", "must lie in [0, 2 pi)");
}

ComplexVector pole_state(int dim, Pole pole) {
    ComplexVector e = ComplexVector::Zero(dim);
    e(pole == Pole::north ? 0 : dim - 1) = 1.0;
    return e;
}

}  // namespace

ComplexMatrix scs_rotation(const SpinAlgebra& spin, double theta, double phi) {
    const ComplexMatrix generator = std::sin(phi) * spin.jx - std::cos(phi) * spin.jy;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(generator);
    if (eig.info() != Eigen::Success) throw Error(ErrorKind::numeric, "rotation generator eigensolve failed");
    const ComplexVector phases =
        (std::complex<double>(0.0, theta) * eig.eigenvalues().cast<std::complex<double>>()).array().exp();
    return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

ComplexVector build_scs(int n_atoms, double theta, double phi, Pole pole) {
    check_angles(theta, phi);
    const SpinAlgebra spin = spin_matrices(n_atoms);
    return scs_rotation(spin, theta, phi) * pole_state(spin.dim, pole);
}

int min_coherent_cutoff(double intensity) {
    return static_cast<int>(std::ceil(intensity + 8.0 * std::sqrt(intensity + 1.0)));
}

ComplexVector build_coherent(std::complex<double> alpha, int cutoff) {
    if (cutoff < 1) throw ValidationError("cutoff", "must be >= 1");
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
        throw ValidationError("alpha", "must be finite");
    const double intensity = std::norm(alpha);
    ComplexVector out = ComplexVector::Zero(cutoff + 1);
    if (intensity == 0.0) {
        out(0) = 1.0;
        return out;
    }
    if (intensity + 8.0 * std::sqrt(intensity + 1.0) > cutoff) {
        throw ValidationError("cutoff", "too small for |alpha|^2 = " + std::to_string(intensity) +
                                            ", need >= " + std::to_string(min_coherent_cutoff(intensity)));
    }
    out(0) = std::exp(-0.5 * intensity);
    for (int n = 1; n <= cutoff; ++n) out(n) = out(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    out.normalize();
    return out;
}

ComplexVector product_state(const ComplexVector& boson, const ComplexVector& spin) {
    ComplexVector out(boson.size() * spin.size());
    for (Eigen::Index n = 0; n < boson.size(); ++n) out.segment(n * spin.size(), spin.size()) = boson(n) * spin;
    return out;
}

double trial_energy(const ModelParams& p, Variant variant, double u, double v, double theta, double phi,
                    Pole pole, int cutoff) {
    validate(p);
    const ComplexVector psi =
        product_state(build_coherent({u, v}, cutoff), build_scs(p.n_atoms, theta, phi, pole));
    const RealMatrix h = build_hamiltonian(p, variant, cutoff);
    // H is real symmetric, so <psi|H|psi> splits into real and imaginary parts.
    const RealVector re = psi.real();
    const RealVector im = psi.imag();
    return re.dot(h * re) + im.dot(h * im);
}

FrameUncertainty scs_frame_uncertainty(int n_atoms, double theta, double phi, Pole pole) {
    check_angles(theta, phi);
    const SpinAlgebra spin = spin_matrices(n_atoms);
    const ComplexMatrix r = scs_rotation(spin, theta, phi);
    const ComplexVector state = r * pole_state(spin.dim, pole);

    // Returns (<J'>, <J'^2> - <J'>^2) for J' = R J R^dag.
    auto moments = [&](const ComplexMatrix& j) {
        const ComplexVector applied = r * j * r.adjoint() * state;
        const double mean = state.dot(applied).real();
        return std::pair{mean, applied.squaredNorm() - mean * mean};
    };
    const double mean_z = moments(spin.jz).first;
    const double var_x = moments(spin.jx).second;
    const double var_y = moments(spin.jy).second;
    return {0.5 * std::abs(mean_z), std::sqrt(std::max(var_x, 0.0)), std::sqrt(std::max(var_y, 0.0))};
}

}  // namespace dicke
