#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace homog1d {

/// homog1d <effective|corrector|solve-fine|solve-homog|converge|compare>
///         --config <path> [--epsilon v] [--out dir] [--override key=value]...
///
/// `args` includes the program name. Returns 0 on success, 1 when a module
/// reports an error and 2 for command-line usage errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace homog1d
