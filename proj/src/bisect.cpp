#include "qseries/bisect.hpp"

#include <numeric>

#include "qseries/solve.hpp"

namespace qs {

namespace {

BiPoly y_power(long k) { return BiPoly::mono(QMonomial{1, 0, 0, static_cast<int>(k)}); }

// y^k A(y) + sign shift (q^{1/2} y)^k B(y)
std::vector<BiPoly> columns(const BisectionCaseData& c, long degree, int sign, int root) {
    if (root % 2) throw DomainError("reverse bisection needs an even root, got " + std::to_string(root));
    BiPoly A = to_bipoly(c.A, root), SB = to_bipoly(c.shift, root) * to_bipoly(c.B, root);
    std::vector<BiPoly> cols;
    for (long k = 0; k <= degree; ++k) {
        BiPoly half = BiPoly::mono(QMonomial{1, k * root / 2, 0, static_cast<int>(k)});
        BiPoly second = half * SB;
        cols.push_back(y_power(k) * A + (sign > 0 ? second : -second));
    }
    return cols;
}

Poly compress(const LaurentSeries& s, long shift, long g) {
    if (s.is_zero()) return Poly();
    std::vector<Rat> out((s.top_exp() - shift) / g + 1);
    for (long e = s.valuation(); e <= s.top_exp(); ++e) {
        Rat v = s.coeff(e);
        if (v != 0) out[(e - shift) / g] = v;
    }
    return Poly(std::move(out));
}

Poly inflate(const Poly& p, long g) {
    if (g == 1 || p.is_zero()) return p;
    std::vector<Rat> out(p.degree() * g + 1);
    for (long i = 0; i <= p.degree(); ++i) out[i * g] = p.coeff(i);
    return Poly(std::move(out));
}

std::optional<LaurentSeries> as_laurent(const RatFunc& r) {
    const Poly& den = r.den();
    if (den.low_degree() != den.degree()) return std::nullopt;
    const Poly& num = r.num();
    if (num.is_zero()) return LaurentSeries();
    return LaurentSeries::from_coeffs(-den.degree(), num.coeffs(), LaurentSeries::exact);
}

std::string laurent_text(const LaurentSeries& s, int root) {
    std::string out;
    for (long e = s.valuation(); e <= s.top_exp(); ++e) {
        Rat c = s.coeff(e);
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        out += "(" + to_string(c) + ")";
        if (e) out += "*q^(" + to_string(Rat(e) / root) + ")";
    }
    return out.empty() ? "0" : out;
}

} // namespace

BiPoly to_bipoly(const Expr& e, int root) {
    YRat v = eval_yrat(e, YField{root});
    try {
        return exact_div(v.num, v.den);
    } catch (const ExactDivisionFailed&) {
        throw ExactDivisionFailed("'" + e.text() + "' is not a polynomial in y");
    }
}

BiPoly build_P(const BisectionCaseData& c, int root) {
    WellPoisedParams p = make_params(c.params, root, false);
    return build_P(c, weight_t(YField{root}, c.theorem, p, QMonomial{1, 0, 0, 1}), root);
}

BiPoly build_P(const BisectionCaseData& c, const YRat& w, int root) {
    YField f{root};
    YRat v = f.mul(f.mul(eval_yrat(c.prefactor, f), eval_yrat(c.weight_scale, f)), w);
    try {
        return exact_div(v.num, v.den);
    } catch (const ExactDivisionFailed&) {
        throw ExactDivisionFailed("prefactor '" + c.prefactor.text() + "' leaves the denominator " + v.den.str(root) +
                                  " of the weight uncleared");
    }
}

SignSolution solve_sign(const BisectionCaseData& c, long degree, int sign, int root) {
    return solve_sign(c, build_P(c, root), degree, sign, root);
}

SignSolution solve_sign(const BisectionCaseData& c, const BiPoly& P, long degree, int sign, int root) {
    if (degree < 0) throw ParameterError("degree of Q must be nonnegative");
    std::vector<BiPoly> cols = columns(c, degree, sign, root);

    long lo = P.is_zero() ? 0 : P.bottom(), hi = P.is_zero() ? 0 : P.top();
    for (const auto& col : cols) {
        if (col.is_zero()) continue;
        lo = std::min(lo, col.bottom());
        hi = std::max(hi, col.top());
    }
    // one equation per power of y; each row is scaled by its lowest power of t
    std::vector<std::vector<LaurentSeries>> rows;
    std::vector<LaurentSeries> rhs;
    std::vector<long> shift;
    long g = 0;
    for (long j = lo; j <= hi; ++j) {
        std::vector<LaurentSeries> row;
        long m = LaurentSeries::exact;
        for (const auto& col : cols) {
            row.push_back(col.coeff(j));
            if (!row.back().is_zero()) m = std::min(m, row.back().valuation());
        }
        LaurentSeries b = P.coeff(j);
        if (!b.is_zero()) m = std::min(m, b.valuation());
        if (m == LaurentSeries::exact) continue;
        row.push_back(b);
        for (const auto& x : row)
            for (long e = x.valuation(); !x.is_zero() && e <= x.top_exp(); ++e)
                if (x.coeff(e) != 0) g = std::gcd(g, e - m);
        row.pop_back();
        rows.push_back(std::move(row));
        rhs.push_back(b);
        shift.push_back(m);
    }
    if (g == 0) g = 1;

    PolyMatrix M;
    std::vector<Poly> R;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<Poly> r;
        for (const auto& x : rows[i]) r.push_back(compress(x, shift[i], g));
        M.push_back(std::move(r));
        R.push_back(compress(rhs[i], shift[i], g));
    }
    SolveResult sr = poly_solve_overdetermined(M, R);

    SignSolution out;
    out.sign = sign;
    out.degree = degree;
    out.consistent = sr.consistent;
    if (!sr.consistent) return out;
    out.laurent = true;
    for (const auto& x : sr.x) {
        RatFunc r(inflate(x.num(), g), inflate(x.den(), g));
        out.raw.push_back(r);
        auto l = as_laurent(r);
        if (!l) {
            out.laurent = false;
            continue;
        }
        out.Q_raw.push_back(*l);
    }
    if (!out.laurent) {
        out.Q_raw.clear();
        return out;
    }
    out.Q = out.Q_raw;
    const LaurentSeries& a0 = out.Q_raw.front();
    if (!a0.is_zero() && a0.is_monomial())
        for (auto& x : out.Q) x = ls_div(x, a0);
    return out;
}

BisectionResult solve_Q(const BisectionCaseData& c, long degree, int root) {
    return solve_Q(c, build_P(c, root), degree, root);
}

BisectionResult solve_Q(const BisectionCaseData& c, const BiPoly& P, long degree, int root) {
    BisectionResult r;
    r.plus = solve_sign(c, P, degree, +1, root);
    r.minus = solve_sign(c, P, degree, -1, root);
    if (r.plus.consistent && r.minus.consistent)
        throw AmbiguousSign("case " + c.id + ": both signs are consistent at degree " + std::to_string(degree));
    if (!r.plus.consistent && !r.minus.consistent)
        throw NoBisection("case " + c.id + ": no consistent sign at degree " + std::to_string(degree));
    r.sign = r.plus.consistent ? 1 : -1;
    return r;
}

BisectionResult degree_search(const BisectionCaseData& c, long max_deg, int root) {
    return degree_search(c, build_P(c, root), max_deg, root);
}

BisectionResult degree_search(const BisectionCaseData& c, const BiPoly& P, long max_deg, int root) {
    if (max_deg < 0) throw ParameterError("max degree must be nonnegative");
    for (long d = 0; d <= max_deg; ++d) {
        try {
            return solve_Q(c, P, d, root);
        } catch (const NoBisection&) {
        }
    }
    throw NoBisection("case " + c.id + ": no consistent Q up to degree " + std::to_string(max_deg));
}

BiPoly bisection_residual(const BisectionCaseData& c, const BiPoly& P, const std::vector<LaurentSeries>& Q, int sign,
                          int root) {
    std::vector<BiPoly> cols = columns(c, static_cast<long>(Q.size()) - 1, sign, root);
    BiPoly r = P;
    for (std::size_t k = 0; k < Q.size(); ++k) r -= BiPoly(Q[k]) * cols[k];
    return r;
}

std::string q_polynomial_text(const std::vector<LaurentSeries>& Q, int root) {
    std::string out;
    for (std::size_t k = 0; k < Q.size(); ++k) {
        if (Q[k].is_zero()) continue;
        if (!out.empty()) out += "+";
        out += "(" + laurent_text(Q[k], root) + ")";
        if (k) out += "*q^((" + to_string(Rat(static_cast<long>(k)) / 2) + ")n)";
    }
    return out.empty() ? "0" : out;
}

IdentityRecord emit_reduced(const BisectionCaseData& c, const SignSolution& s, int root) {
    if (!s.consistent || !s.laurent) throw NoBisection("case " + c.id + ": no Laurent polynomial solution to emit");
    IdentityRecord r;
    r.id = c.id + "-reduced";
    r.section = 4;
    r.theorem = c.theorem;
    r.form = "bisected";
    r.params = c.params;
    r.e = 1 + 2 * c.params[0] - c.params[1] - c.params[2] - c.params[3];
    r.root = root;
    r.lhs_num = c.lhs_num;
    r.lhs_den = c.lhs_den;
    std::string body = "(" + c.term.text() + ")(" + q_polynomial_text(s.Q_raw, r.root) + ")";
    r.rhs = Expr::parse(s.sign < 0 ? "(-1)^n" + body : body);
    r.note = "reduced by reverse bisection from case " + c.id;
    return r;
}

std::optional<long> pairing_mismatch(const BisectionCaseData& c, const SignSolution& s, long pairs, long order,
                                     int root) {
    if (c.theorem != Theorem::T3U && c.theorem != Theorem::T2U && c.theorem != Theorem::Tp23U)
        throw ParameterError("pairing needs a theorem whose series starts at n = 0");
    SeriesField f{order, root};
    WellPoisedParams p = make_params(c.params, root, false);
    Expr T = Expr::parse("(" + c.term.text() + ")(" + q_polynomial_text(s.Q_raw, root) + ")");
    auto kappa = [&](const SeriesField& g) {
        return g.div(product_series(c.lhs_num, c.lhs_den, g.order, root), lhs_product(c.theorem, p, g.order, root));
    };
    for (long n = 0; n < pairs; ++n) {
        LaurentSeries lhs = at_full_order(f, [&](const SeriesField& g) {
            LaurentSeries even = eval_series(T, 2 * n, g), odd = eval_series(T, 2 * n + 1, g);
            return s.sign > 0 ? g.add(even, odd) : g.sub(even, odd);
        });
        LaurentSeries rhs = at_full_order(f, [&](const SeriesField& g) {
            return g.mul(kappa(g), theorem_term(c.theorem, p, n, g.order, root));
        });
        if (first_difference(lhs, rhs)) return n;
    }
    return std::nullopt;
}

nlohmann::json bisection_json(const BisectionCaseData& c, const BisectionResult& r, int root) {
    const SignSolution& s = r.chosen();
    nlohmann::json j;
    j["case"] = c.id;
    j["sign"] = s.sign > 0 ? "+" : "-";
    j["degree"] = s.degree;
    j["consistent"] = s.consistent;
    j["plus_consistent"] = r.plus.consistent;
    j["minus_consistent"] = r.minus.consistent;
    j["laurent"] = s.laurent;
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& a : s.Q) {
        nlohmann::json terms = nlohmann::json::array();
        for (long e = a.valuation(); !a.is_zero() && e <= a.top_exp(); ++e)
            if (a.coeff(e) != 0) terms.push_back({{"coeff", to_string(a.coeff(e))}, {"q_exp", to_string(Rat(e) / root)}});
        coeffs.push_back(terms);
    }
    j["Q_coefficients"] = coeffs;
    return j;
}

} // namespace qs
