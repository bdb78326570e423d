#pragma once
// Independent reference computations shared by the unit tests and the acceptance run.
#include <vector>

#include "qseries/poly.hpp"
#include "qseries/solve.hpp"

namespace oracle {

// cofactor expansion, independent of the elimination code
inline qs::Poly det(const qs::PolyMatrix& m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    qs::Poly acc;
    for (std::size_t j = 0; j < n; ++j) {
        qs::PolyMatrix minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<qs::Poly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(row);
        }
        qs::Poly term = m[0][j] * det(minor);
        if (j % 2) acc -= term;
        else acc += term;
    }
    return acc;
}

} // namespace oracle
