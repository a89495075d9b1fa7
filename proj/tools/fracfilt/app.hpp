#pragma once
#include <iosfwd>

namespace fracfilt {

enum exit_status : int { exit_ok = 0, exit_validation = 1, exit_io = 2, exit_numeric = 3 };

// Full command line. Data goes to -o (or `out` when absent), diagnostics to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace fracfilt
