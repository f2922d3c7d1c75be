#pragma once

#include <ostream>

namespace coneq_cli {

// Invariant battery over the built-in fixtures (the four-point lattice
// sample, the univariate sample {1,2,3,4}, the standard 2-d Gaussian).
// Prints one PASS/FAIL line per property; returns true when all pass.
bool run_selftest(std::ostream& out);

}  // namespace coneq_cli
