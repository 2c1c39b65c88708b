#pragma once

#include <iosfwd>

namespace jetmech::cli {

/// Entry point of the `jetmech` tool. Exit codes: 0 success, 1 a check or
/// integration failed, 2 bad input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jetmech::cli
