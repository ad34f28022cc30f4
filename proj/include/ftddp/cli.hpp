#pragma once

#include <iosfwd>

namespace ftddp {

/// Command dispatch for the ftddp tool. Exit codes: 0 success/converged,
/// 1 usage or config error, 2 solver hit the iteration budget or stalled,
/// 3 solver failure.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace ftddp
