#pragma once

namespace stewart {

// Entry point behind the `stewart` binary. Returns the process exit code:
// 0 on success, 1 on configuration or usage errors, 2 on numeric failures
// (divergence, singular configurations).
int run_cli(int argc, const char* const* argv);

}  // namespace stewart
