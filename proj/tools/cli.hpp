#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zz3d::cli {

enum exit_code : int { ok = 0, usage = 1, data = 2 };

/// Runs one invocation. `args` excludes the program name. Machine-readable
/// output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zz3d::cli
