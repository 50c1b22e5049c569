#pragma once

namespace thinsets::cli {

// Exit codes: 0 success, 2 config error, 3 assertion/invariant failure, 4 I/O.
int run(int argc, const char* const* argv);

}  // namespace thinsets::cli
