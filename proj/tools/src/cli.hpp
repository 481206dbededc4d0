#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace openmult::cli {

/// Runs the command line tool. args excludes the program name.
/// Returns 0 on success, 2 on rejected input, 1 on internal failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace openmult::cli
