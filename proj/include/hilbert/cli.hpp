#pragma once

#include <ostream>

namespace hilbert {

/// The hilbertlab command line. Exit codes: 0 success, 1 invalid input,
/// 2 numerical non-convergence, 3 selftest failures. Errors are reported as
/// JSON on `out`.
int run_cli(int argc, const char* const* argv, std::ostream& out);

}  // namespace hilbert
