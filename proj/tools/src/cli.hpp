#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace killingbeck::cli {

// Exit codes: 0 results written, 1 no solution or no convergence, 2 invalid input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace killingbeck::cli
