#pragma once

#include <iosfwd>

namespace dsicut::cli {

enum ExitCode : int { ok = 0, failure = 1, usage = 2, data_error = 3, size_limit = 4 };

/// Entry point of the dsicut tool.  Reports go to out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace dsicut::cli
