#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace reeb::cli {

// Parses and executes one toolkit invocation; args excludes the program name.
// Returns 0 when every requested check passed, 1 when a verification failed
// or a result could not be certified, 2 on usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// convenience overload for main(): writes to std::cout / std::cerr
int run(int argc, const char* const* argv);

} // namespace reeb::cli
