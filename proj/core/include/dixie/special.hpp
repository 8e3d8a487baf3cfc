#pragma once

#include <cstddef>

namespace dixie {

// H_M = sum_{j=1}^M 1/j, summed directly.
double harmonic(std::size_t count);

// Riemann zeta for p > 1: a truncated series plus the Euler-Maclaurin tail
// J^{1-p}/(p-1) + J^{-p}/2 + Bernoulli corrections. Accurate to ~1e-13.
double zeta(double p);

}  // namespace dixie
