#pragma once
#include <algorithm>
#include <string>

#include "qseries/bipoly.hpp"
#include "qseries/errors.hpp"
#include "qseries/laurent.hpp"
#include "qseries/qcore.hpp"

namespace qs {

// Evaluation domains for the theorem formulas. Each exposes the same
// small vocabulary: one, constant, mono, one_minus, add, sub, mul, div, neg,
// is_zero. Formulas are written once as templates over these.

// q = t^root with t a fixed rational
struct RatField {
    using value = Rat;
    Rat t;
    int root = default_root;

    value one() const { return 1; }
    value constant(const Rat& c) const { return c; }
    value mono(const QMonomial& m) const;
    value one_minus(const QMonomial& m) const { return 1 - mono(m); }
    value add(const value& a, const value& b) const { return a + b; }
    value sub(const value& a, const value& b) const { return a - b; }
    value mul(const value& a, const value& b) const { return a * b; }
    value div(const value& a, const value& b) const;
    value neg(const value& a) const { return -a; }
    bool is_zero(const value& a) const { return a == 0; }
};

// truncated Laurent series in t, everything cut at `order`
struct SeriesField {
    using value = LaurentSeries;
    long order = 200;
    int root = default_root;

    value one() const { return LaurentSeries(1); }
    value constant(const Rat& c) const { return LaurentSeries(c); }
    value mono(const QMonomial& m) const;
    value one_minus(const QMonomial& m) const;
    value add(const value& a, const value& b) const { return (a + b).truncated(order); }
    value sub(const value& a, const value& b) const { return (a - b).truncated(order); }
    value mul(const value& a, const value& b) const { return ls_mul(a, b).truncated(order); }
    value div(const value& a, const value& b) const;
    value neg(const value& a) const { return -a; }
    bool is_zero(const value& a) const { return a.is_zero(); }
    SeriesField with_order(long o) const { return SeriesField{o, root}; }
};

// Leading coefficient of a one-parameter perturbation: the value is
// eps^pole_order * coeff. A binomial 1 - m with m exactly 1 becomes
// -m.eps * eps when the perturbation weight is nonzero and a true zero
// otherwise.
struct RegValue {
    long eps = 0;
    LaurentSeries coeff;
    bool structural_zero = false;
};

struct RegField {
    using value = RegValue;
    long order = 200;
    int root = default_root;

    value one() const { return {0, LaurentSeries(1), false}; }
    value constant(const Rat& c) const;
    value mono(const QMonomial& m) const;
    value one_minus(const QMonomial& m) const;
    value add(const value& a, const value& b) const;
    value sub(const value& a, const value& b) const { return add(a, neg(b)); }
    value mul(const value& a, const value& b) const;
    value div(const value& a, const value& b) const;
    value neg(const value& a) const { return {a.eps, -a.coeff, a.structural_zero}; }
    bool is_zero(const value& a) const { return a.structural_zero || a.coeff.is_zero(); }
    RegField with_order(long o) const { return RegField{o, root}; }
};

// rational functions num/den in (t, y), y standing for q^n
struct YRat {
    BiPoly num{Rat(0)};
    BiPoly den{Rat(1)};
};

struct YField {
    using value = YRat;
    int root = default_root;

    value one() const { return {BiPoly(Rat(1)), BiPoly(Rat(1))}; }
    value constant(const Rat& c) const { return {BiPoly(c), BiPoly(Rat(1))}; }
    value mono(const QMonomial& m) const { return {BiPoly::mono(m), BiPoly(Rat(1))}; }
    value one_minus(const QMonomial& m) const { return {BiPoly(Rat(1)) - BiPoly::mono(m), BiPoly(Rat(1))}; }
    value add(const value& a, const value& b) const;
    value sub(const value& a, const value& b) const { return add(a, neg(b)); }
    value mul(const value& a, const value& b) const { return {a.num * b.num, a.den * b.den}; }
    value div(const value& a, const value& b) const;
    value neg(const value& a) const { return {-a.num, a.den}; }
    bool is_zero(const value& a) const { return a.num.is_zero(); }
};

// ---- generic helpers ----

template <class F>
typename F::value mul_binom(const F& f, const typename F::value& v, const QMonomial& m) {
    return f.mul(v, f.one_minus(m));
}

template <class F>
typename F::value div_binom(const F& f, const typename F::value& v, const QMonomial& m) {
    auto d = f.one_minus(m);
    if (f.is_zero(d))
        throw VanishingDenominatorFactor("denominator factor (1 - " + m.str(f.root) + ") vanishes");
    return f.div(v, d);
}

// v * (x; base)_n, or v / (x; base)_n when `divide` is set; negative n uses
// (x; base)_{-k} = 1 / (x base^{-k}; base)_k
template <class F>
typename F::value apply_poch(const F& f, typename F::value v, const QMonomial& x, const QMonomial& base, long n,
                             bool divide) {
    if (n < 0) {
        QMonomial y = x * base.pow(n);
        return apply_poch(f, std::move(v), y, base, -n, !divide);
    }
    QMonomial m = x;
    for (long k = 0; k < n; ++k) {
        v = divide ? div_binom(f, v, m) : mul_binom(f, v, m);
        m = m * base;
    }
    return v;
}

template <class F>
typename F::value poch(const F& f, const QMonomial& x, const QMonomial& base, long n) {
    return apply_poch(f, f.one(), x, base, n, false);
}

// order bookkeeping for the truncated domains
inline long valuation_of(const LaurentSeries& v) { return v.is_zero() ? 0 : v.valuation(); }
inline long valuation_of(const RegValue& v) { return v.structural_zero || v.coeff.is_zero() ? 0 : v.coeff.valuation(); }
inline long order_of(const LaurentSeries& v) { return v.order(); }
inline long order_of(const RegValue& v) { return v.coeff.order(); }
inline LaurentSeries truncate_to(const LaurentSeries& v, long o) { return v.truncated(o); }
inline RegValue truncate_to(const RegValue& v, long o) { return {v.eps, v.coeff.truncated(o), v.structural_zero}; }
inline LaurentSeries one_to(const SeriesField&, long o) { return LaurentSeries(1).truncated(o); }
inline RegValue one_to(const RegField&, long o) { return {0, LaurentSeries(1).truncated(o), false}; }

// (x; base)_∞ times v; base must have positive t-exponent. Factors are taken
// until the omitted tail 1 + O(t^k) cannot reach below f.order.
template <class F>
typename F::value apply_poch_inf(const F& f, typename F::value v, const QMonomial& x, const QMonomial& base,
                                 bool divide) {
    if (base.e <= 0) throw DivergentProduct("infinite product base " + base.str(f.root) + " has no positive valuation");
    QMonomial m = x;
    while (m.e < f.order - std::min(0L, valuation_of(v))) {
        v = divide ? div_binom(f, v, m) : mul_binom(f, v, m);
        m = m * base;
    }
    return f.mul(v, one_to(f, m.e));
}

// fn evaluated at a working order raised until the result is good to f.order
template <class F, class Fn>
typename F::value at_full_order(const F& f, Fn&& fn) {
    long work = f.order;
    for (int attempt = 0;; ++attempt) {
        typename F::value v = fn(f.with_order(work));
        long got = order_of(v);
        if (got >= f.order) return truncate_to(v, f.order);
        if (attempt == 6)
            throw NonmonotoneValuation("value cannot be computed to order " + std::to_string(f.order));
        work += (f.order - got) + f.root;
    }
}

template <class F>
typename F::value power(const F& f, const typename F::value& v, long k) {
    if (k < 0) return f.div(f.one(), power(f, v, -k));
    typename F::value out = f.one(), b = v;
    while (k) {
        if (k & 1) out = f.mul(out, b);
        k >>= 1;
        if (k) b = f.mul(b, b);
    }
    return out;
}

} // namespace qs
