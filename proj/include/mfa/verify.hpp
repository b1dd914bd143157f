#pragma once

#include <ostream>

namespace mfa {

/// Runs the built-in oracle suites (finite-difference gradient checks,
/// likelihood identities, eigen machinery) and prints one PASS/FAIL line
/// each. Returns the number of failed suites.
int run_verification(std::ostream& out);

}  // namespace mfa
