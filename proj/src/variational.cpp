#include "dicke/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Stationary intensity is (N Omega^2 / (k g^2)) (g^4/g_c^4 - 1) with k = 4 for
// the full model and k = 1 under the RWA.
double intensity_divisor(Variant variant) { return variant == Variant::full ? 4.0 : 1.0; }

// g^4/g_c^4 - 1 without cancellation near the critical point.
double quartic_excess(double g, double gc) {
    const double gc2 = gc * gc;
    return (g - gc) * (g + gc) * (g * g + gc2) / (gc2 * gc2);
}

}  // namespace

std::string_view to_string(Phase p) { return p == Phase::normal ? "normal" : "superradiant"; }

std::string_view to_string(Degeneracy d) {
    switch (d) {
        case Degeneracy::point: return "point";
        case Degeneracy::sign_pair: return "sign-pair";
        case Degeneracy::circle: return "circle";
    }
    return "point";
}

double critical_coupling(const ModelParams& p, Variant variant) {
    const double gc = std::sqrt(p.omega * p.Omega);
    return variant == Variant::full ? gc : 2.0 * gc;
}

Phase phase_of(const ModelParams& p, Variant variant) {
    return p.g <= critical_coupling(p, variant) ? Phase::normal : Phase::superradiant;
}

EffectiveSpinFrame effective_frame(const ModelParams& p, Variant variant, double u, double v) {
    const double root_n = std::sqrt(static_cast<double>(p.n_atoms));
    double bx = 0.0;
    double by = 0.0;
    if (variant == Variant::full) {
        bx = 2.0 * p.g * u / root_n;
    } else {
        bx = p.g * u / root_n;
        by = -p.g * v / root_n;
    }
    const double transverse = std::hypot(bx, by);
    EffectiveSpinFrame frame;
    frame.r = std::hypot(p.Omega, transverse);
    frame.theta = std::atan2(transverse, p.Omega);
    if (transverse > 0.0) {
        frame.phi = std::atan2(by, bx);
        if (frame.phi < 0.0) frame.phi += two_pi;
        if (frame.phi >= two_pi) frame.phi = 0.0;
    }
    return frame;
}

double energy_functional(const ModelParams& p, Variant variant, double u, double v, Branch branch) {
    const double r = effective_frame(p, variant, u, v).r;
    const double spin_part = 0.5 * p.n_atoms * r;
    const double field_part = p.omega * (u * u + v * v);
    return branch == Branch::minus ? field_part - spin_part : field_part + spin_part;
}

double stationary_intensity(const ModelParams& p, Variant variant) {
    const double gc = critical_coupling(p, variant);
    if (p.g <= gc) return 0.0;
    const double prefactor = p.n_atoms * p.Omega * p.Omega / (intensity_divisor(variant) * p.g * p.g);
    return prefactor * quartic_excess(p.g, gc);
}

StationaryField stationary_field(const ModelParams& p, Variant variant) {
    const double intensity = stationary_intensity(p, variant);
    if (intensity == 0.0) return {{0.0, 0.0}, Degeneracy::point};
    return {{std::sqrt(intensity), 0.0}, variant == Variant::full ? Degeneracy::sign_pair : Degeneracy::circle};
}

double jz_expectation(const ModelParams& p, Variant variant) {
    const double half_n = 0.5 * p.n_atoms;
    const double gc = critical_coupling(p, variant);
    if (p.g <= gc) return -half_n;
    return -half_n * (gc * gc) / (p.g * p.g);
}

BranchResult branch_energy(const ModelParams& p, Variant variant, Branch branch) {
    validate(p);
    const double gc = critical_coupling(p, variant);
    const StationaryField stationary = stationary_field(p, variant);

    BranchResult out;
    out.branch = branch;
    out.variant = variant;
    out.phase = phase_of(p, variant);
    out.field = stationary.field;
    out.degeneracy = stationary.degeneracy;
    out.gamma = two_pi * stationary.field.intensity();
    out.gamma_is_extension = variant == Variant::rwa;

    const double n = p.n_atoms;
    if (out.phase == Phase::normal) {
        out.energy = (branch == Branch::minus ? -0.5 : 0.5) * n * p.Omega;
    } else {
        const double g2 = p.g * p.g;
        const double gc2 = gc * gc;
        const double scale = n * p.Omega * g2 * gc2 / 4.0;
        out.energy = branch == Branch::minus ? -scale * (1.0 / (gc2 * gc2) + 1.0 / (g2 * g2))
                                             : scale * (3.0 / (gc2 * gc2) - 1.0 / (g2 * g2));
    }
    out.energy_per_atom = out.energy / n;
    if (branch == Branch::minus) out.jz = jz_expectation(p, variant);
    return out;
}

double geometric_phase(const ModelParams& p, Variant variant) {
    return two_pi * stationary_intensity(p, variant);
}

double gp_derivative(const ModelParams& p, Variant variant, Side side) {
    const double gc = critical_coupling(p, variant);
    if (p.g == gc && side == Side::automatic)
        throw ValidationError("g", "d gamma/dg is discontinuous at g_c; request a one-sided limit");
    const bool above = p.g > gc || (p.g == gc && side == Side::right);
    if (!above) return 0.0;
    const double g2 = p.g * p.g;
    const double gc2 = gc * gc;
    const double prefactor = 2.0 * two_pi * p.n_atoms * p.Omega * p.Omega / intensity_divisor(variant);
    return prefactor * p.g * (1.0 / (gc2 * gc2) + 1.0 / (g2 * g2));
}

ScalingCheck gp_scaling_check(const ModelParams& p, double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw ValidationError("delta", "must be finite and > 0");
    ModelParams shifted = p;
    const double gc = critical_coupling(p, Variant::full);
    shifted.g = gc + delta;
    ScalingCheck out;
    out.lhs = geometric_phase(shifted, Variant::full) / p.n_atoms;
    out.rhs = two_pi * p.Omega * p.Omega / (gc * gc * gc) * delta;
    out.relative_gap = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
    return out;
}

namespace {

// Minimizes f on [lo, hi] to a bracket narrower than tol.
template <typename F>
std::pair<double, double> golden_section(F&& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace

MinimizerResult numeric_minimize(const ModelParams& p, Variant variant, const MinimizerOptions& options) {
    validate(p);
    if (options.grid_points < 3) throw ValidationError("grid_points", "must be >= 3");
    auto energy = [&](double u, double v) { return energy_functional(p, variant, u, v, Branch::minus); };

    const double gc = critical_coupling(p, variant);
    const double half_width =
        2.0 * std::sqrt(static_cast<double>(p.n_atoms)) * std::max(1.0, p.g / gc) * p.Omega / gc;
    // Odd point count keeps the origin on the grid.
    const int points = options.grid_points | 1;
    const double step = 2.0 * half_width / (points - 1);

    double best_u = 0.0;
    double best_v = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < points; ++i) {
        const double u = -half_width + i * step;
        for (int j = 0; j < points; ++j) {
            const double v = -half_width + j * step;
            const double e = energy(u, v);
            if (e < best) {
                best = e;
                best_u = u;
                best_v = v;
            }
        }
    }

    const double tol = options.position_tol * std::max(1.0, half_width);
    for (int round = 1; round <= options.max_rounds; ++round) {
        const double previous = best;
        const auto [u, eu] =
            golden_section([&](double x) { return energy(x, best_v); }, best_u - step, best_u + step, tol);
        if (eu <= best) {
            best_u = u;
            best = eu;
        }
        const auto [v, ev] =
            golden_section([&](double y) { return energy(best_u, y); }, best_v - step, best_v + step, tol);
        if (ev <= best) {
            best_v = v;
            best = ev;
        }
        if (round > 1 && previous - best <= options.energy_tol) return {{best_u, best_v}, best, round};
    }
    throw NumericError("numeric_minimize did not converge in " + std::to_string(options.max_rounds) + " rounds",
                       best_u, best_v, best);
}

}  // namespace dicke
