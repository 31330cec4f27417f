#pragma once

#include <iosfwd>

namespace su3::cli {

// Exit codes: 0 success, 1 verification failure, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace su3::cli
