#include "qseries/solve.hpp"

#include "qseries/errors.hpp"

namespace qs {

SolveResult poly_solve_overdetermined(const PolyMatrix& A, const std::vector<Poly>& b) {
    std::size_t R = A.size();
    if (R == 0 || b.size() != R) throw DomainError("solve: need R >= 1 rows and a matching right-hand side");
    std::size_t C = A[0].size();
    if (C == 0 || R < C) throw DomainError("solve: need R >= C >= 1");
    PolyMatrix M(R);
    for (std::size_t i = 0; i < R; ++i) {
        if (A[i].size() != C) throw DomainError("solve: ragged matrix");
        M[i] = A[i];
        M[i].push_back(b[i]);
    }

    Poly prev(Rat(1));
    std::vector<std::size_t> pivcols;
    std::size_t r = 0;
    for (std::size_t col = 0; col < C && r < R; ++col) {
        std::size_t p = R;
        for (std::size_t i = r; i < R; ++i) {
            if (M[i][col].is_zero()) continue;
            if (p == R || M[i][col].degree() < M[p][col].degree()) p = i;
        }
        if (p == R) continue;
        std::swap(M[p], M[r]);
        const Poly piv = M[r][col];
        for (std::size_t i = r + 1; i < R; ++i) {
            for (std::size_t j = col + 1; j <= C; ++j) {
                Poly v = piv * M[i][j] - M[i][col] * M[r][j];
                M[i][j] = exact_div(v, prev);
            }
            M[i][col] = Poly();
        }
        prev = piv;
        pivcols.push_back(col);
        ++r;
    }

    SolveResult res;
    res.rank = static_cast<long>(r);
    for (std::size_t i = r; i < R; ++i)
        if (!M[i][C].is_zero()) return res;

    std::vector<RatFunc> x(C);
    for (std::size_t k = r; k-- > 0;) {
        std::size_t col = pivcols[k];
        RatFunc s(M[k][C]);
        for (std::size_t j = col + 1; j < C; ++j)
            if (!M[k][j].is_zero() && !x[j].is_zero()) s = s - RatFunc(M[k][j]) * x[j];
        x[col] = s / RatFunc(M[k][col]);
    }

    // clear denominators row by row and confirm every original equation
    for (std::size_t i = 0; i < R; ++i) {
        RatFunc lhs;
        for (std::size_t j = 0; j < C; ++j)
            if (!A[i][j].is_zero() && !x[j].is_zero()) lhs = lhs + RatFunc(A[i][j]) * x[j];
        if (!(lhs == RatFunc(b[i]))) return res;
    }
    res.x = std::move(x);
    res.consistent = true;
    return res;
}

} // namespace qs
