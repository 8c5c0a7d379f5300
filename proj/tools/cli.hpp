#pragma once

#include <iosfwd>

namespace knub::cli {

/// Runs the command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace knub::cli
