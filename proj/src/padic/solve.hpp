#pragma once

#include "padic/field.hpp"

namespace orbital::padic {

// square root of a unit square in F_0 (Hensel from a mod-p root)
Fe sqrt_unit(const Ctx& c, const Fe& u);

// z in F^x with Nm(z) = t, for t in F_0^x of even valuation (eta(t) = +1)
Fe norm_solve(const Ctx& c, const Fe& t);

// (x, y) with d1*Nm(x) + d2*Nm(y) = 1 for d1, d2 in F_0^x; solvable for any
// nondegenerate binary Hermitian form over a p-adic field
std::pair<Fe, Fe> binary_norm_solve(const Ctx& c, const Fe& d1, const Fe& d2);

}  // namespace orbital::padic
