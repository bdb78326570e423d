#pragma once
#include <string>
#include <vector>

#include "qseries/field.hpp"
#include "qseries/qcore.hpp"

namespace qs {

// ---- Jackson's terminating very-well-poised sum, e = q^{n+1} a^2 / (bcd) ----

template <class F>
typename F::value jackson_lhs_t(const F& f, const WellPoisedParams& p, long n) {
    if (n < 0) throw ParameterError("jackson sum needs n >= 0");
    const QMonomial q = QMonomial::q(f.root);
    const QMonomial e = q.pow(n + 1) * p.a * p.a / (p.b * p.c * p.d);
    const QMonomial qn = q.pow(n);
    const QMonomial num[] = {p.a, p.b, p.c, p.d, e, qn.inverse()};
    const QMonomial den[] = {q, q * p.a / p.b, q * p.a / p.c, q * p.a / p.d, q * p.a / e, q * qn * p.a};
    typename F::value sum = f.constant(0);
    for (long k = 0; k <= n; ++k) {
        typename F::value t = mul_binom(f, f.mono(q.pow(k)), q.pow(2 * k) * p.a);
        t = div_binom(f, t, p.a);
        for (const auto& x : num) t = apply_poch(f, t, x, q, k, false);
        for (const auto& x : den) t = apply_poch(f, t, x, q, k, true);
        sum = f.add(sum, t);
    }
    return sum;
}

template <class F>
typename F::value jackson_rhs_t(const F& f, const WellPoisedParams& p, long n) {
    const QMonomial q = QMonomial::q(f.root);
    typename F::value v = f.one();
    for (const auto& x : {q * p.a, q * p.a / (p.b * p.c), q * p.a / (p.b * p.d), q * p.a / (p.c * p.d)})
        v = apply_poch(f, v, x, q, n, false);
    for (const auto& x : {q * p.a / p.b, q * p.a / p.c, q * p.a / p.d, q * p.a / (p.b * p.c * p.d)})
        v = apply_poch(f, v, x, q, n, true);
    return v;
}

LaurentSeries jackson_lhs(const WellPoisedParams& p, long n, long order, int root = default_root);
LaurentSeries jackson_rhs(const WellPoisedParams& p, long n, long order, int root = default_root);
Rat jackson_lhs_rational(const WellPoisedParams& p, long n, const Rat& t, int root = default_root);
Rat jackson_rhs_rational(const WellPoisedParams& p, long n, const Rat& t, int root = default_root);

// ---- inverse series relations ----

enum class InversionVariant { gould_hsu, carlitz, extended, reformulated };
std::string variant_name(InversionVariant v);

// φ(x;n) = Π_{k<n} (a_k + x b_k); sigma is used by the extended forms
struct InversionSpec {
    std::vector<QMonomial> a, b;
    QMonomial sigma;
    InversionVariant variant = InversionVariant::gould_hsu;
};

template <class F>
typename F::value phi_poly(const F& f, const InversionSpec& s, const typename F::value& x, long n) {
    if (n > static_cast<long>(s.a.size()) || n > static_cast<long>(s.b.size()))
        throw DegenerateSpec("φ-polynomial needs more coefficients than the spec provides");
    typename F::value v = f.one();
    for (long k = 0; k < n; ++k) {
        typename F::value fac = f.add(f.mono(s.a[k]), f.mul(x, f.mono(s.b[k])));
        if (f.is_zero(fac)) throw DegenerateSpec("φ-polynomial vanishes at an evaluation point");
        v = f.mul(v, fac);
    }
    return v;
}

// [n, k] = (q^{n-k+1}; q)_k / (q; q)_k
template <class F>
typename F::value gauss_binom_t(const F& f, long n, long k) {
    if (k < 0 || k > n) return f.constant(0);
    const QMonomial q = QMonomial::q(f.root);
    typename F::value v = poch(f, q.pow(n - k + 1), q, k);
    return apply_poch(f, v, q, q, k, true);
}

template <class F>
typename F::value checked_div(const F& f, const typename F::value& a, const typename F::value& b) {
    if (f.is_zero(b)) throw DegenerateSpec("division by a vanishing φ-value");
    return f.div(a, b);
}

// forward relation: f(n) for n = 0..N from g(0..N)
template <class F>
std::vector<typename F::value> inversion_forward(const F& f, const InversionSpec& s,
                                                 const std::vector<typename F::value>& g, long N) {
    using V = typename F::value;
    const QMonomial q = QMonomial::q(f.root);
    std::vector<V> out;
    for (long n = 0; n <= N; ++n) {
        V acc = f.constant(0);
        for (long k = 0; k <= n; ++k) {
            V w;
            switch (s.variant) {
            case InversionVariant::gould_hsu: {
                Int c;
                mpz_bin_uiui(c.get_mpz_t(), n, k);
                w = f.mul(f.constant(Rat(c)), phi_poly(f, s, f.constant(k), n));
                break;
            }
            case InversionVariant::carlitz:
                w = f.mul(gauss_binom_t(f, n, k), phi_poly(f, s, f.mono(q.pow(-k)), n));
                break;
            case InversionVariant::extended: {
                w = f.mul(gauss_binom_t(f, n, k), phi_poly(f, s, f.mono(q.pow(k) * s.sigma), n));
                w = f.mul(w, phi_poly(f, s, f.mono(q.pow(-k)), n));
                w = mul_binom(f, w, q.pow(2 * k) * s.sigma);
                w = apply_poch(f, w, q.pow(n) * s.sigma, q, k + 1, true);
                break;
            }
            case InversionVariant::reformulated: {
                // Φ(x;n) = φ(xσ;n) φ(1/x;n), ψ(x;n) = (xσ;q)_n
                auto Phi = [&](const QMonomial& x, long m) {
                    return f.mul(phi_poly(f, s, f.mono(x * s.sigma), m), phi_poly(f, s, f.mono(x.inverse()), m));
                };
                auto psi = [&](const QMonomial& x, long m) { return poch(f, x * s.sigma, q, m); };
                w = f.mul(gauss_binom_t(f, n, k), Phi(q.pow(k), n));
                w = checked_div(f, w, psi(q.pow(n), k + 1));
                w = f.mul(w, checked_div(f, psi(q.pow(k), k + 1), psi(q.pow(k), k)));
                break;
            }
            }
            if (k % 2) w = f.neg(w);
            acc = f.add(acc, f.mul(w, g[k]));
        }
        out.push_back(acc);
    }
    return out;
}

// dual relation: g(n) for n = 0..N from f(0..N)
template <class F>
std::vector<typename F::value> inversion_dual(const F& f, const InversionSpec& s,
                                              const std::vector<typename F::value>& fv, long N) {
    using V = typename F::value;
    const QMonomial q = QMonomial::q(f.root);
    std::vector<V> out;
    for (long n = 0; n <= N; ++n) {
        V acc = f.constant(0);
        for (long k = 0; k <= n; ++k) {
            V w;
            switch (s.variant) {
            case InversionVariant::gould_hsu: {
                Int c;
                mpz_bin_uiui(c.get_mpz_t(), n, k);
                V ak = f.add(f.mono(s.a[k]), f.mul(f.constant(k), f.mono(s.b[k])));
                w = f.mul(f.constant(Rat(c)), checked_div(f, ak, phi_poly(f, s, f.constant(n), k + 1)));
                break;
            }
            case InversionVariant::carlitz: {
                V ak = f.add(f.mono(s.a[k]), f.mono(q.pow(-k) * s.b[k]));
                w = f.mul(gauss_binom_t(f, n, k), f.mono(q.pow(binom2(n - k))));
                w = f.mul(w, checked_div(f, ak, phi_poly(f, s, f.mono(q.pow(-n)), k + 1)));
                break;
            }
            case InversionVariant::extended: {
                V a1 = f.add(f.mono(s.a[k]), f.mono(q.pow(k) * s.sigma * s.b[k]));
                V a2 = f.add(f.mono(s.a[k]), f.mono(q.pow(-k) * s.b[k]));
                V den = f.mul(phi_poly(f, s, f.mono(q.pow(n) * s.sigma), k + 1),
                              phi_poly(f, s, f.mono(q.pow(-n)), k + 1));
                w = f.mul(gauss_binom_t(f, n, k), f.mono(q.pow(binom2(n - k))));
                w = f.mul(w, checked_div(f, f.mul(a1, a2), den));
                w = apply_poch(f, w, q.pow(k) * s.sigma, q, n, false);
                break;
            }
            case InversionVariant::reformulated: {
                auto Phi = [&](const QMonomial& x, long m) {
                    return f.mul(phi_poly(f, s, f.mono(x * s.sigma), m), phi_poly(f, s, f.mono(x.inverse()), m));
                };
                auto psi = [&](const QMonomial& x, long m) { return poch(f, x * s.sigma, q, m); };
                w = f.mul(gauss_binom_t(f, n, k), f.mono(q.pow(binom2(n - k))));
                w = f.mul(w, checked_div(f, psi(q.pow(k), n), Phi(q.pow(n), k + 1)));
                w = f.mul(w, checked_div(f, Phi(q.pow(k), k + 1), Phi(q.pow(k), k)));
                break;
            }
            }
            if (k % 2) w = f.neg(w);
            acc = f.add(acc, f.mul(w, fv[k]));
        }
        out.push_back(acc);
    }
    return out;
}

template <class F>
bool values_equal(const F&, const typename F::value& a, const typename F::value& b) {
    if constexpr (std::is_same_v<typename F::value, LaurentSeries>) return !first_difference(a, b).has_value();
    else return a == b;
}

template <class F>
bool inversion_roundtrip_t(const F& f, const InversionSpec& s, const std::vector<typename F::value>& g, long N) {
    auto fv = inversion_forward(f, s, g, N);
    auto back = inversion_dual(f, s, fv, N);
    for (long n = 0; n <= N; ++n)
        if (!values_equal(f, back[n], g[n])) return false;
    return true;
}

// series form of the round trip at q = t^root
bool gould_hsu_roundtrip(const InversionSpec& s, const std::vector<LaurentSeries>& g, long N, long order,
                         int root = default_root);
// exact rational form with t fixed
bool gould_hsu_roundtrip_rational(const InversionSpec& s, const std::vector<Rat>& g, long N, const Rat& t,
                                  int root = default_root);

// ---- the pattern-split dual identity ----

// φ(x;n) of the well-poised specialization, pattern indices ⟨n⟩
template <class F>
typename F::value pattern_phi(const F& f, const PartitionPattern& pat, const WellPoisedParams& p, const QMonomial& x,
                              long n) {
    const QMonomial q = QMonomial::q(f.root);
    const QMonomial e = q * p.a * p.a / (p.b * p.c * p.d);
    auto ix = partition_indices(pat, n);
    const QMonomial up[] = {p.b * x, p.c * x, p.d * x, e * x};
    const QMonomial down[] = {p.b / (p.a * x), p.c / (p.a * x), p.d / (p.a * x), q * p.a / (p.b * p.c * p.d * x)};
    typename F::value v = f.one();
    for (int i = 0; i < 4; ++i) {
        v = apply_poch(f, v, up[i], q, ix[i], false);
        v = apply_poch(f, v, down[i], q, ix[i], false);
    }
    return v;
}

template <class F>
typename F::value lemma_H_t(const F& f, const PartitionPattern& pat, const WellPoisedParams& p, long n) {
    const QMonomial q = QMonomial::q(f.root);
    const QMonomial e = q * p.a * p.a / (p.b * p.c * p.d);
    auto [nb, nc, nd, ne] = partition_indices(pat, n);
    typename F::value v = f.one();
    auto up = [&](const QMonomial& x, long len) { v = apply_poch(f, v, x, q, len, false); };
    auto down = [&](const QMonomial& x, long len) { v = apply_poch(f, v, x, q, len, true); };
    up(p.b, nb);
    up(p.c, nc);
    up(p.d, nd);
    up(e, ne);
    down(q, n);
    down(p.b * p.c * p.d / p.a, nb + nc + nd);
    up(p.b * p.c / p.a, nb + nc);
    up(q * p.a / (p.b * p.c), nd + ne);
    down(q * p.a / p.b, nc + nd + ne);
    up(p.b * p.d / p.a, nb + nd);
    up(q * p.a / (p.b * p.d), nc + ne);
    down(q * p.a / p.c, nb + nd + ne);
    up(p.c * p.d / p.a, nc + nd);
    up(q * p.a / (p.c * p.d), nb + ne);
    down(q * p.a / p.d, nb + nc + ne);
    return v;
}

// (b, c, d, qa^2/bcd)_n / (qa/b, qa/c, qa/d, bcd/a)_n
template <class F>
typename F::value lemma_H_lhs_t(const F& f, const WellPoisedParams& p, long n) {
    const QMonomial q = QMonomial::q(f.root);
    typename F::value v = f.one();
    for (const auto& x : {p.b, p.c, p.d, q * p.a * p.a / (p.b * p.c * p.d)}) v = apply_poch(f, v, x, q, n, false);
    for (const auto& x : {q * p.a / p.b, q * p.a / p.c, q * p.a / p.d, p.b * p.c * p.d / p.a})
        v = apply_poch(f, v, x, q, n, true);
    return v;
}

template <class F>
typename F::value lemma_H_rhs_t(const F& f, const PartitionPattern& pat, const WellPoisedParams& p, long n) {
    const QMonomial q = QMonomial::q(f.root);
    typename F::value sum = f.constant(0);
    for (long k = 0; k <= n; ++k) {
        typename F::value t = f.mono(q.pow(k - n));
        t = apply_poch(f, t, q.pow(n) * p.a, q, k, false);
        t = apply_poch(f, t, q.pow(-n), q, k, false);
        t = checked_div(f, t, pattern_phi(f, pat, p, q.pow(n), k + 1));
        t = f.mul(t, checked_div(f, pattern_phi(f, pat, p, q.pow(k), k + 1), pattern_phi(f, pat, p, q.pow(k), k)));
        t = f.mul(t, lemma_H_t(f, pat, p, k));
        sum = f.add(sum, t);
    }
    return sum;
}

LaurentSeries lemma_H_value(const WellPoisedParams& p, const PartitionPattern& pat, long n, long order,
                            int root = default_root);
bool lemma_H_verify(const WellPoisedParams& p, const PartitionPattern& pat, long n, long order,
                    int root = default_root);
bool lemma_H_verify_rational(const WellPoisedParams& p, const PartitionPattern& pat, long n, const Rat& t,
                             int root = default_root);

// ---- general dual theorems ----

enum class DualVariant { U, V };

struct DualTheoremSpec {
    WellPoisedParams params;
    PartitionPattern pattern;
    int delta = 0;
    DualVariant variant = DualVariant::U;
};

// the k-th term Θ(k+1) φ(q^k;k+1) / (-φ(q^k;k)) H(k) of the nonterminating dual series
template <class F>
typename F::value dual_general_term(const F& f, const PartitionPattern& pat, const WellPoisedParams& p, long k) {
    const QMonomial q = QMonomial::q(f.root);
    typename F::value t = f.mono(theta(pat, p, k + 1, f.root));
    t = f.mul(t, checked_div(f, pattern_phi(f, pat, p, q.pow(k), k + 1), pattern_phi(f, pat, p, q.pow(k), k)));
    t = f.neg(t);
    return f.mul(t, lemma_H_t(f, pat, p, k));
}

// inner term (n, i): index k = nΛ + i inside the variant's window
template <class F>
typename F::value dual_series_term_t(const F& f, const DualTheoremSpec& s, long n, long i) {
    long L = s.pattern.Lambda;
    if (s.delta < 0 || s.delta >= L) throw ParameterError("δ out of range");
    if (s.variant == DualVariant::U) {
        if (i < s.delta || i >= s.delta + L || n < 0) throw ParameterError("index outside the U window");
    } else {
        if (i < s.delta - L || i >= s.delta || n < 1) throw ParameterError("index outside the V window");
    }
    return dual_general_term(f, s.pattern, s.params, n * L + i);
}

// Σ_{k<δ} of the general terms
template <class F>
typename F::value dual_prefix_t(const F& f, const DualTheoremSpec& s) {
    typename F::value v = f.constant(0);
    for (long k = 0; k < s.delta; ++k) v = f.add(v, dual_general_term(f, s.pattern, s.params, k));
    return v;
}

LaurentSeries dual_series_term(const DualTheoremSpec& s, long n, long i, long order, int root = default_root);

} // namespace qs
