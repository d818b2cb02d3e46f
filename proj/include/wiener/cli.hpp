#pragma once

namespace wiener::cli {

// Batch front door. Exit codes: 0 pass, 1 check failed, 2 usage/config error.
int run(int argc, const char* const* argv);

} // namespace wiener::cli
