#pragma once

// Command-line front end, kept callable in-process so tests can drive it.

#include <iosfwd>
#include <string>
#include <vector>

namespace degen::cli {

/// Exit status: 0 success, 1 input/model/validation error (one line on
/// `err` starting "error[kind]"), 2 usage error. check-h returns 1 when the
/// key sets differ.
/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace degen::cli
