#pragma once

#include <string_view>

namespace dicke {

enum class Variant { full, rwa };
enum class Pole { north, south };
enum class Branch { minus, plus };

std::string_view to_string(Variant v);
std::string_view to_string(Pole p);
std::string_view to_string(Branch b);
Variant parse_variant(std::string_view text);

/// Physical inputs of the Dicke Hamiltonian.
///
/// `omega` is the boson mode frequency, `Omega` the atomic level spacing and
/// `g` the collective coupling. The pseudo-spin is s = n_atoms / 2.
struct ModelParams {
    double omega = 1.0;
    double Omega = 1.0;
    double g = 0.0;
    int n_atoms = 1;

    double spin() const noexcept { return 0.5 * n_atoms; }
};

/// Validating constructor. Throws ValidationError naming the offending field.
ModelParams make_params(double omega, double Omega, double g, int n_atoms);

void validate(const ModelParams& p);

}  // namespace dicke
