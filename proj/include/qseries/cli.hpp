#pragma once
#include <iosfwd>

namespace qs {

// Exit codes: 0 success (verify: status verified), 1 evaluation failure or
// failed check, 2 usage error or unknown id.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace qs
