#include "dicke/params.hpp"

#include <cmath>
#include <string>

#include "dicke/errors.hpp"

namespace dicke {

std::string_view to_string(Variant v) { return v == Variant::full ? "full" : "rwa"; }
std::string_view to_string(Pole p) { return p == Pole::north ? "north" : "south"; }
std::string_view to_string(Branch b) { return b == Branch::minus ? "minus" : "plus"; }

Variant parse_variant(std::string_view text) {
    if (text == "full") return Variant::full;
    if (text == "rwa") return Variant::rwa;
    throw ValidationError("variant", "expected 'full' or 'rwa', got '" + std::string(text) + "'");
}

void validate(const ModelParams& p) {
    if (!std::isfinite(p.omega) || p.omega <= 0.0) throw ValidationError("omega", "must be finite and > 0");
    if (!std::isfinite(p.Omega) || p.Omega <= 0.0) throw ValidationError("Omega", "must be finite and > 0");
    if (!std::isfinite(p.g) || p.g < 0.0) throw ValidationError("g", "must be finite and >= 0");
    if (p.n_atoms < 1) throw ValidationError("n_atoms", "must be >= 1");
}

ModelParams make_params(double omega, double Omega, double g, int n_atoms) {
    ModelParams p{omega, Omega, g, n_atoms};
    validate(p);
    return p;
}

}  // namespace dicke
