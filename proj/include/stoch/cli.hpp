#pragma once

#include <iosfwd>

namespace stoch {

/// Exit codes: 0 pass, 1 a verification failed, 2 usage or malformed input, 3 capacity exceeded.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stoch
