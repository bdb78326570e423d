#pragma once
#include <json.hpp>
#include <vector>

#include "qseries/bipoly.hpp"
#include "qseries/poly.hpp"
#include "qseries/registry.hpp"

namespace qs {

// Reverse bisection. With y = q^n the triplicate summand is rewritten as
// common(n) * P(y), and the unknown Q solves
//     P(y) = Q(y) A(y) + sign * shift * Q(q^{1/2} y) B(y),
// which makes sum (sign)^n T_n, T_n = term(n) Q(q^{n/2}), pair up into the
// triplicate series.

// exact polynomial in (t, y) from an expression in q and y
BiPoly to_bipoly(const Expr& e, int root = default_root);

// prefactor * weight_scale * W_n with W_n the theorem weight at q^n = y
BiPoly build_P(const BisectionCaseData& c, int root = default_root);
// the same with an explicit weight in place of the theorem's
BiPoly build_P(const BisectionCaseData& c, const YRat& weight, int root = default_root);

struct SignSolution {
    int sign = 1;
    long degree = 0;
    bool consistent = false;
    bool laurent = false;            // every coefficient is a Laurent polynomial in t
    std::vector<RatFunc> raw;        // coefficients as solved, in t
    std::vector<LaurentSeries> Q;    // a_0 = 1 normalized (when laurent)
    std::vector<LaurentSeries> Q_raw;
};

struct BisectionResult {
    SignSolution plus, minus;
    int sign = 0;  // the consistent sign
    const SignSolution& chosen() const { return sign > 0 ? plus : minus; }
};

SignSolution solve_sign(const BisectionCaseData& c, long degree, int sign, int root = default_root);
SignSolution solve_sign(const BisectionCaseData& c, const BiPoly& P, long degree, int sign, int root = default_root);
// throws NoBisection when neither sign is consistent and AmbiguousSign when both are
BisectionResult solve_Q(const BisectionCaseData& c, long degree, int root = default_root);
BisectionResult solve_Q(const BisectionCaseData& c, const BiPoly& P, long degree, int root = default_root);
// smallest consistent degree in [0, max_deg]
BisectionResult degree_search(const BisectionCaseData& c, long max_deg, int root = default_root);
BisectionResult degree_search(const BisectionCaseData& c, const BiPoly& P, long max_deg, int root = default_root);

// P - (Q A + sign shift Q(q^{1/2} y) B)
BiPoly bisection_residual(const BisectionCaseData& c, const BiPoly& P, const std::vector<LaurentSeries>& Q, int sign,
                          int root = default_root);

// Q(q^{n/2}) as catalog expression text
std::string q_polynomial_text(const std::vector<LaurentSeries>& Q, int root = default_root);

// the alternating single-sum record over the case's product side
IdentityRecord emit_reduced(const BisectionCaseData& c, const SignSolution& s, int root = default_root);

// T_{2n} + sign T_{2n+1} against the theorem summand scaled by
// (case product) / (theorem product); returns the first n that disagrees
std::optional<long> pairing_mismatch(const BisectionCaseData& c, const SignSolution& s, long pairs, long order,
                                     int root = default_root);

nlohmann::json bisection_json(const BisectionCaseData& c, const BisectionResult& r, int root = default_root);

} // namespace qs
