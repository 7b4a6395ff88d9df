#pragma once

#include <ostream>

namespace rotorlog::cli {

inline constexpr int exit_found = 0;
inline constexpr int exit_ok = 0;
inline constexpr int exit_no_solution = 1;
inline constexpr int exit_mismatch = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_io = 3;

/// Entry point for `rotorlog <solve|verify|sweep|precision-scan> ...`.
/// Machine-readable JSON goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rotorlog::cli
