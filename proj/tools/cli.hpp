#pragma once

#include <iosfwd>

namespace mht::cli {

/// Parses argv and runs one subcommand. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mht::cli
