#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace semroot::cli {

/// Exit codes: 0 success, 1 usage error, 2 data error. Results go to `out`,
/// warnings and errors to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace semroot::cli
