#include "qseries/field.hpp"

#include <sstream>

namespace qs {

RatField::value RatField::mono(const QMonomial& m) const {
    if (m.ypow != 0) throw DomainError("rational domain cannot hold y");
    return m.coeff * rat_pow(t, m.e);
}

RatField::value RatField::div(const value& a, const value& b) const {
    if (b == 0) throw VanishingDenominatorFactor("division by an exact zero");
    return a / b;
}

SeriesField::value SeriesField::mono(const QMonomial& m) const { return m.series(); }

SeriesField::value SeriesField::one_minus(const QMonomial& m) const {
    return LaurentSeries(1) - m.series();
}

SeriesField::value SeriesField::div(const value& a, const value& b) const {
    if (b.is_zero()) throw VanishingDenominatorFactor("division by a series that is zero to order " + std::to_string(b.order()));
    return ls_div(a, b, order).truncated(order);
}

RegField::value RegField::constant(const Rat& c) const { return {0, LaurentSeries(c), c == 0}; }

RegField::value RegField::mono(const QMonomial& m) const { return {0, m.series(), false}; }

RegField::value RegField::one_minus(const QMonomial& m) const {
    if (m.ypow != 0) throw DomainError("regularized domain cannot hold y");
    if (m.e == 0 && m.coeff == 1) {
        if (m.eps == 0) return {0, LaurentSeries::zero(), true};
        return {1, LaurentSeries(Rat(-m.eps)), false};
    }
    return {0, LaurentSeries(1) - m.series(), false};
}

RegField::value RegField::add(const value& a, const value& b) const {
    if (a.structural_zero) return b;
    if (b.structural_zero) return a;
    // a coefficient that is zero to the working order carries no information
    // about its perturbation order, so it never takes the lead
    if (a.eps != b.eps) {
        if (a.coeff.is_zero() && !b.coeff.is_zero()) return b;
        if (b.coeff.is_zero() && !a.coeff.is_zero()) return a;
    }
    if (a.eps < b.eps) return a;
    if (b.eps < a.eps) return b;
    LaurentSeries s = a.coeff + b.coeff;
    // exact cancellation loses the leading term; cancellation within the
    // truncation only says the coefficient vanishes to order
    if (s.is_zero() && s.is_exact() && !a.coeff.is_zero() && !b.coeff.is_zero())
        throw RegularizationCancellation("leading perturbation terms cancel at eps^" + std::to_string(a.eps));
    return {a.eps, s.truncated(order), false};
}

RegField::value RegField::mul(const value& a, const value& b) const {
    if (a.structural_zero || b.structural_zero) return {0, LaurentSeries::zero(), true};
    return {a.eps + b.eps, ls_mul(a.coeff, b.coeff).truncated(order), false};
}

RegField::value RegField::div(const value& a, const value& b) const {
    if (b.structural_zero) throw VanishingDenominatorFactor("division by a vanishing factor");
    if (a.structural_zero) return a;
    if (b.coeff.is_zero())
        throw VanishingDenominatorFactor("division by a series that is zero to order " + std::to_string(b.coeff.order()));
    return {a.eps - b.eps, ls_div(a.coeff, b.coeff, order).truncated(order), false};
}

YField::value YField::add(const value& a, const value& b) const {
    if (a.den == b.den) return {a.num + b.num, a.den};
    return {a.num * b.den + b.num * a.den, a.den * b.den};
}

YField::value YField::div(const value& a, const value& b) const {
    if (b.num.is_zero()) throw VanishingDenominatorFactor("division by zero rational function");
    return {a.num * b.den, a.den * b.num};
}

// ---- BiPoly ----

BiPoly::BiPoly(const Rat& c) {
    if (c != 0) c_.emplace(0, LaurentSeries(c));
}

BiPoly::BiPoly(const LaurentSeries& c, long ydeg) {
    if (!c.is_exact()) throw DomainError("BiPoly coefficients must be exact");
    if (!c.is_zero()) c_.emplace(ydeg, c);
}

BiPoly BiPoly::mono(const QMonomial& m) { return BiPoly(LaurentSeries::monomial(m.coeff, m.e), m.ypow); }

LaurentSeries BiPoly::coeff(long k) const {
    auto it = c_.find(k);
    return it == c_.end() ? LaurentSeries() : it->second;
}

void BiPoly::put(long k, LaurentSeries v) {
    if (v.is_zero()) c_.erase(k);
    else c_[k] = std::move(v);
}

BiPoly BiPoly::operator-() const {
    BiPoly r;
    for (const auto& [k, v] : c_) r.c_.emplace(k, -v);
    return r;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    for (const auto& [k, v] : o.c_) {
        auto it = c_.find(k);
        if (it == c_.end()) c_.emplace(k, v);
        else put(k, it->second + v);
    }
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) { return *this += -o; }

BiPoly BiPoly::shifted_y(long s) const {
    BiPoly r;
    for (const auto& [k, v] : c_) r.c_.emplace(k + s, v);
    return r;
}

std::string BiPoly::str(int root) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << "(" << it->second.str(root) << ")";
        if (it->first != 0) os << "*y^" << it->first;
    }
    return os.str();
}

BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [i, x] : a.terms())
        for (const auto& [j, y] : b.terms()) r += BiPoly(ls_mul(x, y), i + j);
    return r;
}

BiPoly exact_div(const BiPoly& a, const BiPoly& b) {
    if (b.is_zero()) throw ExactDivisionFailed("division by the zero polynomial");
    BiPoly rem = a, quo;
    if (rem.is_zero()) return quo;
    long lowest = a.bottom() - b.bottom();
    long hb = b.top();
    LaurentSeries lead = b.coeff(hb);
    while (!rem.is_zero()) {
        long k = rem.top() - hb;
        if (k < lowest) throw ExactDivisionFailed("remainder left after dividing by (" + b.str() + ")");
        LaurentSeries c;
        try {
            c = ls_div(rem.coeff(rem.top()), lead);
        } catch (const ExactDivisionFailed&) {
            throw ExactDivisionFailed("coefficient division failed against leading term (" + lead.str() + ")");
        }
        BiPoly term(c, k);
        quo += term;
        rem -= term * b;
    }
    return quo;
}

} // namespace qs
