#pragma once

#include <iosfwd>

namespace fringe::cli {

// Entry point behind the `fringe` binary. Returns 0 on success, 2 on usage
// errors, 1 on runtime failures (diagnostic on `err`). All randomness flows
// from the explicit --seed flags; identical invocations print identical
// bytes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fringe::cli
