#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mgx::cli {

// Parses and dispatches one invocation.  args excludes the program name.
// Returns the process exit status: 0 success, 1 failed check (or an empty
// search under --expect-some), 2 usage or parse error, 3 budget exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mgx::cli
