#pragma once

namespace annlab {

// Front door used by the annlab binary and by in-process CLI tests.
// Exit codes: 0 success, 1 usage error, 2 invalid argument/config,
// 3 file-format error, 4 I/O error, 5 internal error.
int run_cli(int argc, const char* const* argv);

}  // namespace annlab
