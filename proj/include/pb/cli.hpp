#pragma once

#include <iosfwd>

namespace pb::cli {

// Runs one pbtool invocation. Exit codes: 0 success, 1 check failed or
// violation found (a valid result for the check/verify commands), 2 usage
// error, 3 input or format error.
int dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace pb::cli
