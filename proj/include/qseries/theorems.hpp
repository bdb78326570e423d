#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qseries/field.hpp"
#include "qseries/inversion.hpp"
#include "qseries/qcore.hpp"

namespace qs {

enum class Theorem { T2U, T2V, T3U, T3V, Tp23U };

std::string theorem_name(Theorem t);
Theorem parse_theorem(const std::string& s);  // "2U", "2V", "3U", "3V", "p23U"

// first summation index and whether the series starts with a bare 1
long theorem_first_index(Theorem t);

namespace detail {

template <class F>
typename F::value ratio(const F& f, std::initializer_list<QMonomial> num, std::initializer_list<QMonomial> den) {
    typename F::value v = f.one();
    for (const auto& m : num) v = mul_binom(f, v, m);
    for (const auto& m : den) v = div_binom(f, v, m);
    return v;
}

} // namespace detail

// weight functions; qn stands for q^n (a q-power, or y in the bisection domain)
template <class F>
typename F::value weight_2U_t(const F& f, const WellPoisedParams& p, const QMonomial& qn) {
    using detail::ratio;
    const QMonomial q = QMonomial::q(f.root);
    const auto &a = p.a, &b = p.b, &c = p.c, &d = p.d;
    const QMonomial qn2 = qn.pow(2), qn3 = qn.pow(3);
    auto pre = ratio(f, {q * a / (b * c), qn * c * d / a, qn2 * b * d / a, q * qn3 * b},
                     {a / d, q * qn2, q * qn2 * a / c, qn2 * b * c * d / a});
    auto t1 = f.mono(qn * a / d);
    auto t2 = ratio(f, {qn * a / d, q * qn2, q * qn2 * a / c, qn2 * b * c * d / a, qn3 * d},
                    {q * qn * a / (b * c), qn * d, qn * c * d / a, qn2 * b * d / a, q * qn3 * b});
    return f.mul(pre, f.add(t1, t2));
}

template <class F>
typename F::value weight_2V_t(const F& f, const WellPoisedParams& p, const QMonomial& qn) {
    using detail::ratio;
    const QMonomial q = QMonomial::q(f.root);
    const auto &a = p.a, &b = p.b, &c = p.c, &d = p.d;
    const QMonomial qn2 = qn.pow(2), qn3 = qn.pow(3);
    auto lead = ratio(f, {qn3 * d}, {d});
    auto x = ratio(f,
                   {qn2, qn.inverse() * b / a, qn2 * a / c, qn2 * b * c * d / (q * a), qn3 * b / q.pow(2)},
                   {qn * a / (c * d), qn * b / q, qn * b * c / (q * a), qn2 * b * d / (q * a), qn3 * d});
    return f.mul(lead, f.sub(f.one(), x));
}

template <class F>
typename F::value weight_3U_t(const F& f, const WellPoisedParams& p, const QMonomial& qn) {
    using detail::ratio;
    const QMonomial q = QMonomial::q(f.root);
    const auto &a = p.a, &b = p.b, &c = p.c, &d = p.d;
    const QMonomial qn2 = qn.pow(2), qn3 = qn.pow(3), qn4 = qn.pow(4);
    auto pre = ratio(f, {qn2 * b * d / a, q * qn * a / (b * c), qn2 * c * d / a, q * qn4 * c},
                     {q * qn3, c, q * qn2 * a / b, qn3 * b * c * d / a});
    auto t1 = f.mono(qn2 * a / d);
    auto t2 = ratio(f, {qn2 * a / d, qn3 * b * c * d / a, qn4 * d, q * qn2 * a / b, q * qn3},
                    {qn * d, qn2 * b * d / a, qn2 * c * d / a, q * qn * a / (b * c), q * qn4 * c});
    auto t3 = f.mul(f.mono(q * qn4 * a * a / (c * d)),
                    ratio(f, {qn * c, qn2 * b * c / a, q * qn * a / (b * d), q * qn2 * c * d / a, q.pow(2) * qn4 * b},
                          {q * qn2 * a / c, q * qn2 * a / d, q * qn3 * b * c * d / a, q.pow(2) * qn3, q * qn4 * c}));
    return f.mul(pre, f.add(f.add(t1, t2), t3));
}

template <class F>
typename F::value weight_3V_t(const F& f, const WellPoisedParams& p, const QMonomial& qn) {
    using detail::ratio;
    const QMonomial q = QMonomial::q(f.root);
    const auto &a = p.a, &b = p.b, &c = p.c, &d = p.d;
    const QMonomial qn2 = qn.pow(2), qn3 = qn.pow(3), qn4 = qn.pow(4);
    const QMonomial bcd_a = b * c * d / a;
    auto pre = ratio(f, {qn3, b / a, c / a, qn3 * bcd_a / q, qn4 * b / q.pow(2)},
                     {c * d / a, d.inverse(), qn * b / q, qn2 * b * c / (q * a), qn2 * b * d / (q * a)});
    auto t2 = ratio(f, {qn * b / q, qn2 * b * c / (q * a), qn2 * b * d / (q * a), qn * a / (c * d), qn4 * d},
                    {qn3, qn2.inverse() * b / a, qn2 * a / c, qn3 * bcd_a / q, qn4 * b / q.pow(2)});
    auto t3 = ratio(f, {qn3 / q, q * qn2.inverse() * c / a, qn2 * a / (q * d), qn3 * bcd_a / q.pow(2), qn4 * c / q.pow(3)},
                    {qn * c / q, qn2 * b * c / (q.pow(2) * a), qn * a / (b * d), qn2 * c * d / (q * a),
                     qn4 * b / q.pow(2)});
    return f.mul(pre, f.sub(f.sub(f.one(), t2), t3));
}

template <class F>
typename F::value weight_p23U_t(const F& f, const WellPoisedParams& p, const QMonomial& qn) {
    using detail::ratio;
    const QMonomial q = QMonomial::q(f.root);
    const auto &a = p.a, &b = p.b, &c = p.c, &d = p.d;
    const QMonomial qn2 = qn.pow(2), qn3 = qn.pow(3), qn4 = qn.pow(4), qn5 = qn.pow(5);
    auto pre = ratio(f, {q * qn2 * a / (b * c), qn2 * c * d / a, qn3 * b * d / a, q * qn4 * b},
                     {q * qn3, q * qn3 * a / c, a / d, qn3 * b * c * d / a});
    auto t1 = f.mono(qn * a / d);
    auto t2 = ratio(f, {qn * a / d, q * qn3, q * qn3 * a / c, qn3 * b * c * d / a, qn5 * d},
                    {q * qn2 * a / (b * c), qn2 * c * d / a, qn2 * d, qn3 * b * d / a, q * qn4 * b});
    auto t3 = f.mul(f.mono(q * qn3 * a * a / (b * d)),
                    ratio(f, {qn * b, qn * b * c / a, q * qn * a / (c * d), q * qn3 * b * d / a, q.pow(3) * qn5 * d},
                          {q * qn2 * a / b, q.pow(2) * qn3, q.pow(2) * qn3 * a / c, q * qn3 * b * c * d / a,
                           q * qn4 * b}));
    return f.mul(pre, f.add(f.add(t1, t2), t3));
}

template <class F>
typename F::value weight_t(const F& f, Theorem t, const WellPoisedParams& p, const QMonomial& qn) {
    switch (t) {
    case Theorem::T2U: return weight_2U_t(f, p, qn);
    case Theorem::T2V: return weight_2V_t(f, p, qn);
    case Theorem::T3U: return weight_3U_t(f, p, qn);
    case Theorem::T3V: return weight_3V_t(f, p, qn);
    case Theorem::Tp23U: return weight_p23U_t(f, p, qn);
    }
    throw ParameterError("unknown theorem");
}

// the non-weight part of the n-th summand: a monomial power and Pochhammer factors
struct SummandShape {
    QMonomial power;
    std::vector<std::pair<QMonomial, long>> num, den;  // (x, length) of (x; q)_length
};

SummandShape summand_shape(Theorem t, const WellPoisedParams& p, long n, int root = default_root);

template <class F>
F reduced_field(const F& f, long shift) {
    if constexpr (requires { f.with_order(0L); }) return f.with_order(f.order - shift);
    else return f;
}

template <class F>
typename F::value theorem_term_t(const F& f, Theorem t, const WellPoisedParams& p, long n) {
    const QMonomial q = QMonomial::q(f.root);
    SummandShape s = summand_shape(t, p, n, f.root);
    // everything but the monomial power is needed only to order - val(power)
    F g = reduced_field(f, s.power.e);
    typename F::value v = weight_t(g, t, p, q.pow(n));
    for (const auto& [x, len] : s.num) v = apply_poch(g, v, x, q, len, false);
    for (const auto& [x, len] : s.den) v = apply_poch(g, v, x, q, len, true);
    return f.mul(v, f.mono(s.power));
}

// numerator and denominator arguments of the infinite-product side
struct ProductSide {
    std::vector<QMonomial> num, den;
};

ProductSide theorem_lhs_args(Theorem t, const WellPoisedParams& p, int root = default_root);

template <class F>
typename F::value lhs_product_t(const F& f, Theorem t, const WellPoisedParams& p) {
    const QMonomial q = QMonomial::q(f.root);
    ProductSide s = theorem_lhs_args(t, p, f.root);
    return at_full_order(f, [&](const F& g) {
        typename F::value v = g.one();
        for (const auto& x : s.num) v = apply_poch_inf(g, v, x, q, false);
        for (const auto& x : s.den) v = apply_poch_inf(g, v, x, q, true);
        return v;
    });
}

// normalization N with summand(n) = Σ_window general_term / N
template <class F>
typename F::value theorem_normalizer_t(const F& f, Theorem t, const WellPoisedParams& p) {
    if (t == Theorem::T3U) return f.mul(f.one_minus(p.c), f.one_minus(p.d));
    return f.mul(f.one_minus(p.d), f.one_minus(p.a / p.d));
}

DualTheoremSpec theorem_dual_spec(Theorem t, const WellPoisedParams& p);

// the specialized summand rebuilt from the general dual series terms
template <class F>
typename F::value theorem_term_from_dual_t(const F& f, Theorem t, const WellPoisedParams& p, long n) {
    DualTheoremSpec s = theorem_dual_spec(t, p);
    typename F::value v = f.constant(0);
    long L = s.pattern.Lambda;
    if (s.variant == DualVariant::V && n == 0) {
        v = dual_prefix_t(f, s);
    } else {
        long lo = s.variant == DualVariant::U ? s.delta : s.delta - L;
        for (long i = lo; i < lo + L; ++i) v = f.add(v, dual_series_term_t(f, s, n, i));
    }
    return f.div(v, theorem_normalizer_t(f, t, p));
}

// Summation with the stop rule: each term is computed to at least `order`
// (the working order is raised when divisions eat precision), and the sum
// stops after three consecutive terms vanish to `order`.
struct SumResult {
    long terms_used = 0;
};

constexpr long max_series_terms = 4000;

template <class F>
long value_order(const typename F::value& v) {
    if constexpr (std::is_same_v<typename F::value, LaurentSeries>) return v.order();
    else return v.coeff.order();
}

template <class F>
bool value_zero(const typename F::value& v) {
    if constexpr (std::is_same_v<typename F::value, LaurentSeries>) return v.is_zero();
    else return v.structural_zero || v.coeff.is_zero();
}

template <class F, class Term>
typename F::value sum_to_order(const F& f, long first, Term&& term, SumResult* info = nullptr) {
    typename F::value sum = f.constant(0);
    int zero_run = 0;
    long n = first;
    long used = 0;
    for (; zero_run < 3; ++n) {
        if (n - first > max_series_terms)
            throw NonmonotoneValuation("series terms still reach below t^" + std::to_string(f.order) + " after " +
                                       std::to_string(max_series_terms) + " terms");
        long work = f.order;
        typename F::value t;
        for (int attempt = 0;; ++attempt) {
            t = term(f.with_order(work), n);
            long got = value_order<F>(t);
            if (got >= f.order || attempt == 6) break;
            work += (f.order - got) + f.root;
        }
        if (value_order<F>(t) < f.order)
            throw NonmonotoneValuation("term " + std::to_string(n) + " cannot be computed to the requested order");
        if constexpr (std::is_same_v<typename F::value, LaurentSeries>) t = t.truncated(f.order);
        else t.coeff = t.coeff.truncated(f.order);
        if (value_zero<F>(t)) {
            ++zero_run;
        } else {
            zero_run = 0;
            used = n - first + 1;
            sum = f.add(sum, t);
        }
    }
    if (info) info->terms_used = used;
    return sum;
}

template <class F>
typename F::value theorem_series_t(const F& f, Theorem t, const WellPoisedParams& p, SumResult* info = nullptr) {
    long first = theorem_first_index(t);
    auto term = [&](const F& g, long n) { return theorem_term_t(g, t, p, n); };
    typename F::value s = sum_to_order(f, first, term, info);
    if (first == 1) s = f.add(f.one(), s);
    if (info && first == 1) info->terms_used += 1;
    return s;
}

// concrete entry points at q = t^root
LaurentSeries weight_series(Theorem t, const WellPoisedParams& p, long n, long order, int root = default_root);
LaurentSeries theorem_term(Theorem t, const WellPoisedParams& p, long n, long order, int root = default_root);
LaurentSeries theorem_series(Theorem t, const WellPoisedParams& p, long order, int root = default_root,
                             SumResult* info = nullptr);
LaurentSeries lhs_product(Theorem t, const WellPoisedParams& p, long order, int root = default_root);

// parameters a, b, c, d from q-exponents; `perturb` attaches distinct generic
// perturbation weights so coincident factors can be regularized
WellPoisedParams make_params(const std::array<Rat, 4>& exps, int root = default_root, bool perturb = false);

} // namespace qs
