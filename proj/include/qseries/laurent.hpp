#pragma once
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qseries/rat.hpp"

namespace qs {

// Truncated Laurent series in t with exact rational coefficients.
// Known coefficients cover exponents below order(); an exact series
// (a Laurent polynomial) has order() == LaurentSeries::exact.
class LaurentSeries {
public:
    static constexpr long exact = std::numeric_limits<long>::max() / 4;

    LaurentSeries() = default;  // exact zero
    LaurentSeries(const Rat& c);  // exact constant
    static LaurentSeries monomial(const Rat& c, long e, long order = exact);
    static LaurentSeries zero(long order = exact);
    static LaurentSeries from_coeffs(long first_exp, std::vector<Rat> c, long order);

    long order() const { return order_; }
    // lowest exponent with a nonzero coefficient, or order() if there is none
    long valuation() const { return lo_; }
    long top_exp() const { return lo_ + static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_exact() const { return order_ >= exact; }
    bool is_monomial() const;
    std::size_t nnz() const;
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(long e) const;
    const Rat& lead() const { return c_.front(); }

    LaurentSeries truncated(long order) const;
    LaurentSeries shifted(long k) const;  // multiply by t^k
    LaurentSeries scaled(const Rat& s) const;
    LaurentSeries operator-() const;

    LaurentSeries& operator+=(const LaurentSeries& o);
    LaurentSeries& operator-=(const LaurentSeries& o);

    // structural equality: same order and same coefficients
    bool operator==(const LaurentSeries& o) const;

    std::string str(int root = 1) const;

private:
    void normalize();
    long lo_ = exact;
    std::vector<Rat> c_;
    long order_ = exact;
    friend LaurentSeries ls_mul_serial(const LaurentSeries&, const LaurentSeries&);
    friend LaurentSeries ls_mul_parallel(const LaurentSeries&, const LaurentSeries&);
    friend LaurentSeries ls_div(const LaurentSeries&, const LaurentSeries&, long);
};

// saturating order arithmetic: anything touching `exact` stays exact
long ord_add(long a, long b);

LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b);
LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b);
LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);

LaurentSeries ls_mul_serial(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries ls_mul_parallel(const LaurentSeries& a, const LaurentSeries& b);
// dispatches to the parallel kernel for large dense operands outside a parallel region
LaurentSeries ls_mul(const LaurentSeries& a, const LaurentSeries& b);

// order_if_exact bounds the result when both operands are exact and the
// quotient is not a Laurent polynomial.
LaurentSeries ls_div(const LaurentSeries& a, const LaurentSeries& b, long order_if_exact = LaurentSeries::exact);
LaurentSeries ls_inv(const LaurentSeries& a, long order_if_exact = LaurentSeries::exact);
LaurentSeries ls_pow(const LaurentSeries& a, long k, long order_if_exact = LaurentSeries::exact);

// lowest exponent below both orders where the coefficients differ
std::optional<long> first_difference(const LaurentSeries& a, const LaurentSeries& b);

} // namespace qs
