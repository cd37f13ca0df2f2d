#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace foxcol {

// Parses and executes one command line (program name excluded), writing the
// report or an "error: ..." line to out. Returns the process exit status:
// 0 on success, 1 on input or domain problems, 2 on usage problems.
int run(const std::vector<std::string>& args, std::ostream& out);

}  // namespace foxcol
