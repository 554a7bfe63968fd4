#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace om {

/// Command-line front end. Returns the process exit code:
/// 0 success, 1 usage error (message on err), 2 mathematical precondition
/// failure (structured error JSON on out).
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace om
