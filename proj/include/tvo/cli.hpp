#pragma once

namespace tvo {

// Entry point of the command-line front end.  Exit codes: 0 success,
// 1 validation failure, 2 usage error, 3 missing fixture.
int run_cli(int argc, const char* const* argv);

}  // namespace tvo
