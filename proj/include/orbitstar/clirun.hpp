#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orbitstar::cli {

// Exit codes: 0 = pass, 1 = property failure (witness printed), 2 = usage
// or parse error. Reports use the stable line format PROPERTY\tSTATUS\tWITNESS.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);
int run_command(int argc, const char* const* argv, std::ostream& out,
                std::ostream& err);

}  // namespace orbitstar::cli
