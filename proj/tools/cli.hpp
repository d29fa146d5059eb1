#pragma once

#include <iosfwd>

namespace delone {

// Exit codes: 0 success, 1 domain error, 2 usage error.  Errors are a single
// "error: <code>: <message>" line on `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace delone
