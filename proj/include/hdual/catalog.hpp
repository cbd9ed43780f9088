#pragma once

// Named systems used by the CLI, the reproduction suite and the tests.

#include "hdual/algebra.hpp"
#include "hdual/system.hpp"

namespace hdual::catalog {

/// (4, {0,2}, {0,p}) for odd p.
HadamardSystem cantor(long p);

/// (diag(3,3), {(0,0),(1,0),(0,1)}, {(0,0),(1,2),(-1,-2)}). X(L) lies on the
/// line through (1,2), and (0,1/2) is an L-extreme fixed point in X(B).
HadamardSystem planar_line();

/// (8, {0,2,4,6}, {0,1,2,7}). The digit 7 has the B-extreme fixed point 1.
HadamardSystem shifted_eighths();

}  // namespace hdual::catalog
