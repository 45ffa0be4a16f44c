#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quadradyn {

/// Runs the command line tool on already-split arguments (no argv[0]).
/// Exit codes: 0 success, 2 invalid spec, 3 numerical failure,
/// 64 usage error.
int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace quadradyn
