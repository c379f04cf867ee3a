#pragma once

namespace dicke {

inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 2;
inline constexpr int exit_convergence = 3;
inline constexpr int exit_io = 4;
inline constexpr int exit_resource = 5;
inline constexpr int exit_specification = 6;
inline constexpr int exit_internal = 70;

/// Entry point of the `dicke` command-line tool.
int run_cli(int argc, const char* const* argv);

}  // namespace dicke
