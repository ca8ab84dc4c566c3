#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ugen {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUnresolved = 3;

/// Batch front end. args excludes the program name. Flags can also be set through
/// UGEN_SEED, UGEN_TOL, UGEN_WORKERS, UGEN_OUT, UGEN_STRICT and UGEN_TII.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ugen
