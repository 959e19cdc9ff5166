#pragma once

#include <iosfwd>

namespace psv {

/// Exit codes of run_subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // a checked property failed or a computation raised
inline constexpr int kExitUsage = 2;

/// Runs `psieve <subcommand> [flags]`. Subcommands: verify-identities,
/// zeros, sieve, detector, constants, fields-enumerate, chebotarev, torsion.
int run_subcommand(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace psv
