#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace possloc {

// Batch front end.  Exit status: 0 success, 2 usage or input error; with
// --exit-status, 0 = Local/Robust/none-found and 1 = Nonlocal/NotRobust/
// pattern-found.  Warnings go to `err`, parseable output to `out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace possloc
