#pragma once
#include <map>
#include <string>

#include "qseries/laurent.hpp"
#include "qseries/qcore.hpp"

namespace qs {

// Laurent polynomial in y whose coefficients are Laurent polynomials in t.
class BiPoly {
public:
    BiPoly() = default;
    BiPoly(const Rat& c);
    BiPoly(const LaurentSeries& c, long ydeg = 0);
    static BiPoly mono(const QMonomial& m);

    bool is_zero() const { return c_.empty(); }
    long top() const { return c_.rbegin()->first; }
    long bottom() const { return c_.begin()->first; }
    LaurentSeries coeff(long k) const;
    const std::map<long, LaurentSeries>& terms() const { return c_; }

    BiPoly operator-() const;
    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    BiPoly shifted_y(long k) const;
    bool operator==(const BiPoly& o) const { return c_ == o.c_; }

    std::string str(int root = default_root) const;

private:
    void put(long k, LaurentSeries v);
    std::map<long, LaurentSeries> c_;
};

BiPoly operator+(BiPoly a, const BiPoly& b);
BiPoly operator-(BiPoly a, const BiPoly& b);
BiPoly operator*(const BiPoly& a, const BiPoly& b);
// a / b when the quotient is again a BiPoly; otherwise ExactDivisionFailed
BiPoly exact_div(const BiPoly& a, const BiPoly& b);

} // namespace qs
