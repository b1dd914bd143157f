#pragma once

namespace mfa {

/// Entry point behind main(). Exit codes: 0 success, 1 invalid input or
/// failed verification, 2 runtime failure (I/O, divergence, convergence).
int cli_main(int argc, const char* const* argv);

}  // namespace mfa
