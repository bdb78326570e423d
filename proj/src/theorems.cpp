#include "qseries/theorems.hpp"

namespace qs {

std::string theorem_name(Theorem t) {
    switch (t) {
    case Theorem::T2U: return "2U";
    case Theorem::T2V: return "2V";
    case Theorem::T3U: return "3U";
    case Theorem::T3V: return "3V";
    case Theorem::Tp23U: return "p23U";
    }
    return "?";
}

Theorem parse_theorem(const std::string& s) {
    if (s == "2U") return Theorem::T2U;
    if (s == "2V") return Theorem::T2V;
    if (s == "3U") return Theorem::T3U;
    if (s == "3V") return Theorem::T3V;
    if (s == "p23U") return Theorem::Tp23U;
    throw ParseError("unknown theorem '" + s + "'");
}

long theorem_first_index(Theorem t) { return (t == Theorem::T2V || t == Theorem::T3V) ? 1 : 0; }

SummandShape summand_shape(Theorem t, const WellPoisedParams& p, long n, int root) {
    const QMonomial q = QMonomial::q(root);
    const auto &a = p.a, &b = p.b, &c = p.c, &d = p.d;
    SummandShape s;
    switch (t) {
    case Theorem::T2U:
        s.power = q.pow(n * n) * (a * a / (b * d)).pow(n);
        s.num = {{b * d / a, 2 * n}, {b, n}, {q * d, n}, {q.pow(2) * a / (b * c), n}, {b * c / a, n},
                 {q * a / (c * d), n}, {c * d / a, n}};
        s.den = {{q, 2 * n}, {q * a / c, 2 * n}, {b * c * d / a, 2 * n}, {q * a / b, n}, {q * a / d, n}};
        break;
    case Theorem::T2V:
        s.power = q.pow(n * n) * (a * a / (b * d)).pow(n);
        s.num = {{b * d / a, 2 * n}, {b, n}, {d, n}, {q * a / (b * c), n}, {b * c / a, n},
                 {q * a / (c * d), n}, {c * d / a, n}};
        s.den = {{q, 2 * n}, {q * a / c, 2 * n}, {b * c * d / a, 2 * n}, {q * a / b, n}, {a / d, n}};
        break;
    case Theorem::T3U:
        s.power = q.pow(3 * n * n) * (a * a * a / (b * c * d)).pow(n);
        s.num = {{b, n}, {c, n}, {q * d, n}, {q * a / (b * c), n}, {q * a / (b * d), n}, {q * a / (c * d), n},
                 {b * c / a, 2 * n}, {b * d / a, 2 * n}, {c * d / a, 2 * n}};
        s.den = {{q * a / b, 2 * n}, {q * a / c, 2 * n}, {q * a / d, 2 * n}, {q, 3 * n}, {b * c * d / a, 3 * n}};
        break;
    case Theorem::T3V:
        s.power = q.pow(3 * n * n - 2 * n) * (a * a * a / (b * c * d)).pow(n);
        s.num = {{b, n}, {c, n}, {d, n}, {q * a / (b * c), n}, {q * a / (b * d), n}, {a / (c * d), n},
                 {b * c / a, 2 * n}, {b * d / a, 2 * n}, {c * d / a, 2 * n}};
        s.den = {{a / b, 2 * n}, {a / c, 2 * n}, {a / d, 2 * n}, {q, 3 * n}, {b * c * d / a, 3 * n}};
        break;
    case Theorem::Tp23U:
        s.power = q.pow(2 * n * n) * (a * a * a / (b * d * d)).pow(n);
        s.num = {{q * a / (c * d), n}, {b, n}, {b * c / a, n}, {q * a / (b * c), 2 * n}, {q * d, 2 * n},
                 {c * d / a, 2 * n}, {b * d / a, 3 * n}};
        s.den = {{q * a / d, n}, {q * a / b, 2 * n}, {q, 3 * n}, {q * a / c, 3 * n}, {b * c * d / a, 3 * n}};
        break;
    }
    return s;
}

ProductSide theorem_lhs_args(Theorem t, const WellPoisedParams& p, int root) {
    const QMonomial q = QMonomial::q(root);
    const auto &a = p.a, &b = p.b, &c = p.c, &d = p.d;
    const QMonomial e = q * a * a / (b * c * d);
    if (t == Theorem::T3U) return {{b, q * c, q * d, e}, {q * a / b, q * a / c, q * a / d, b * c * d / a}};
    return {{b, c, q * d, e}, {q * a / b, q * a / c, a / d, b * c * d / a}};
}

DualTheoremSpec theorem_dual_spec(Theorem t, const WellPoisedParams& p) {
    switch (t) {
    case Theorem::T2U: return {p, PartitionPattern::duplicate(), 0, DualVariant::U};
    case Theorem::T2V: return {p, PartitionPattern::duplicate(), 1, DualVariant::V};
    case Theorem::T3U: return {p, PartitionPattern::triplicate(), 0, DualVariant::U};
    case Theorem::T3V: return {p, PartitionPattern::triplicate(), 1, DualVariant::V};
    case Theorem::Tp23U: return {p, PartitionPattern::mixed(), 0, DualVariant::U};
    }
    throw ParameterError("unknown theorem");
}

LaurentSeries weight_series(Theorem t, const WellPoisedParams& p, long n, long order, int root) {
    SeriesField f{order, root};
    return weight_t(f, t, p, QMonomial::q(root).pow(n)).truncated(order);
}

LaurentSeries theorem_term(Theorem t, const WellPoisedParams& p, long n, long order, int root) {
    return theorem_term_t(SeriesField{order, root}, t, p, n).truncated(order);
}

LaurentSeries theorem_series(Theorem t, const WellPoisedParams& p, long order, int root, SumResult* info) {
    return theorem_series_t(SeriesField{order, root}, t, p, info).truncated(order);
}

LaurentSeries lhs_product(Theorem t, const WellPoisedParams& p, long order, int root) {
    return lhs_product_t(SeriesField{order, root}, t, p).truncated(order);
}

WellPoisedParams make_params(const std::array<Rat, 4>& exps, int root, bool perturb) {
    static const long weights[4] = {1, 10, 100, 1000};
    std::array<QMonomial, 4> m;
    for (int i = 0; i < 4; ++i) {
        m[i] = QMonomial::q_power(exps[i], root);
        if (perturb) m[i].eps = weights[i];
    }
    return {m[0], m[1], m[2], m[3]};
}

} // namespace qs
