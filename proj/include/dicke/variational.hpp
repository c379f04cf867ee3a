#pragma once

#include <optional>
#include <string_view>

#include "dicke/params.hpp"

namespace dicke {

/// Boson coherent-state parameter alpha = u + iv.
struct FieldPoint {
    double u = 0.0;
    double v = 0.0;

    double intensity() const noexcept { return u * u + v * v; }
};

enum class Phase { normal, superradiant };

/// Shape of the set of degenerate stationary points.
enum class Degeneracy { point, sign_pair, circle };

std::string_view to_string(Phase p);
std::string_view to_string(Degeneracy d);

struct StationaryField {
    FieldPoint field;  ///< canonical representative, u >= 0, v = 0
    Degeneracy degeneracy = Degeneracy::point;
};

/// Effective classical field seen by the pseudo-spin:
/// H_s = r (cos theta J_z + sin theta (cos phi J_x + sin phi J_y)).
struct EffectiveSpinFrame {
    double r = 0.0;
    double theta = 0.0;  ///< in [0, pi]
    double phi = 0.0;    ///< in [0, 2 pi)
};

struct BranchResult {
    Branch branch = Branch::minus;
    Variant variant = Variant::full;
    double energy = 0.0;
    double energy_per_atom = 0.0;
    Phase phase = Phase::normal;
    FieldPoint field;
    Degeneracy degeneracy = Degeneracy::point;
    /// Only the ground (south-pole) branch has a closed-form population.
    std::optional<double> jz;
    double gamma = 0.0;
    /// True for the RWA, where gamma = 2 pi |alpha|^2 is applied beyond the
    /// explicitly derived full-model result.
    bool gamma_is_extension = false;
};

/// sqrt(omega Omega) for the full model, 2 sqrt(omega Omega) under the RWA.
double critical_coupling(const ModelParams& p, Variant variant);

/// g <= g_c is the normal phase; the critical point itself counts as normal.
Phase phase_of(const ModelParams& p, Variant variant);

/// E_+-(u, v) = omega |alpha|^2 +- (N/2) r(u, v).
double energy_functional(const ModelParams& p, Variant variant, double u, double v, Branch branch);

/// Frame that turns |s, +-s> into an eigenstate of the effective spin Hamiltonian.
EffectiveSpinFrame effective_frame(const ModelParams& p, Variant variant, double u, double v);

/// Stationary |alpha|^2 of the ground-branch functional.
double stationary_intensity(const ModelParams& p, Variant variant);
StationaryField stationary_field(const ModelParams& p, Variant variant);

BranchResult branch_energy(const ModelParams& p, Variant variant, Branch branch);

/// Ground-branch <J_z>.
double jz_expectation(const ModelParams& p, Variant variant);

/// gamma = 2 pi |alpha|^2 at the stationary point.
double geometric_phase(const ModelParams& p, Variant variant);

enum class Side { automatic, left, right };

/// d gamma / dg. Exactly at g_c the derivative jumps; pass Side::left or
/// Side::right for the one-sided limit, Side::automatic throws there.
double gp_derivative(const ModelParams& p, Variant variant, Side side = Side::automatic);

struct ScalingCheck {
    double lhs;           ///< gamma(g_c + delta) / N
    double rhs;           ///< (2 pi Omega^2 / g_c^3) delta
    double relative_gap;  ///< |lhs - rhs| / rhs
};

/// Linear onset of gamma/N just above the full-model critical point.
/// `p.g` is ignored.
ScalingCheck gp_scaling_check(const ModelParams& p, double delta);

struct MinimizerOptions {
    int grid_points = 121;       ///< per axis
    double energy_tol = 1e-10;   ///< change in energy between rounds
    double position_tol = 1e-10; ///< golden-section bracket width, relative
    int max_rounds = 200;
};

struct MinimizerResult {
    FieldPoint field;
    double energy;
    int rounds;
};

/// Derivative-free minimum of the ground-branch functional: coarse grid on
/// [-U, U]^2, U = 2 sqrt(N) max(1, g/g_c) Omega/g_c, then alternating
/// golden-section line searches. Throws NumericError with the best iterate
/// when the rounds budget runs out.
MinimizerResult numeric_minimize(const ModelParams& p, Variant variant,
                                 const MinimizerOptions& options = {});

}  // namespace dicke
