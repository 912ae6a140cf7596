// The paracheck command line, callable in-process.
#pragma once

#include <iosfwd>

namespace paracontact {

/// Exit codes: 0 no failed check, 1 some check failed, 2 input or usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace paracontact
