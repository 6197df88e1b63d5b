#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace betafreq {

/**
 * Command-line front end. args excludes the program name. Returns the
 * process exit code: 0 on success, 1 on computation errors, 2 on usage
 * errors. All output goes to the supplied streams, which keeps runs
 * byte-reproducible and testable in-process.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace betafreq
