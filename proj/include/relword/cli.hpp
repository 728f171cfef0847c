#pragma once

#include <iosfwd>

namespace relword::cli {

// Exit codes: 0 success / YES, 1 NO / invalid input, 2 UNKNOWN (budget), 64 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace relword::cli
