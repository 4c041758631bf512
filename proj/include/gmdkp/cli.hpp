#pragma once

#include <iosfwd>

namespace gmdkp::cli {

/// Entry point of the `gmdkp` tool with subcommands gen, solve, exact,
/// theory and bench. Regular output goes to `out`, diagnostics to `err`.
/// Returns 0 on success, 1 on a runtime failure and 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gmdkp::cli
