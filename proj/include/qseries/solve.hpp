#pragma once
#include <vector>

#include "qseries/poly.hpp"

namespace qs {

using PolyMatrix = std::vector<std::vector<Poly>>;

struct SolveResult {
    std::vector<RatFunc> x;  // empty when inconsistent
    bool consistent = false;
    long rank = 0;
};

// Fraction-free (Bareiss) elimination of the R x C system A x = b over Q[t].
// Pivots prefer the lowest-degree nonzero entry; columns without a pivot
// become free variables fixed at zero. The returned solution is re-checked
// against every original equation.
SolveResult poly_solve_overdetermined(const PolyMatrix& A, const std::vector<Poly>& b);

} // namespace qs
