#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace netarch::cli {

// Runs the command line given as argv-style tokens (program name excluded).
// Returns 0 on success, 1 on runtime or domain errors (message on err),
// 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace netarch::cli
