#include "qseries/limits.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <mpfr.h>

#include "qseries/errors.hpp"

namespace qs {

BigFloat BigFloatCtx::tolerance() const {
    PrecisionGuard g(digits);
    return pow(BigFloat(10), -static_cast<long>(digits - guard));
}

SeriesSpec SeriesSpec::from(const ClassicalLimit& c) {
    return SeriesSpec{c.lead, c.sign, c.start, c.term, c.rate};
}

Rat series_term(const SeriesSpec& s, long n) {
    try {
        return eval_rat(s.term, n);
    } catch (const DegenerateTerm& e) {
        throw DegenerateTerm("term " + std::to_string(n) + ": " + e.what());
    }
}

BigFloat gamma_hp(const Rat& x, const BigFloatCtx& ctx) {
    if (is_integer(x) && x <= 0) throw PoleError("Gamma has a pole at " + x.get_str());
    PrecisionGuard g(ctx.digits);
    BigFloat v = to_bigfloat(x), r;
    mpfr_gamma(r.backend().data(), v.backend().data(), MPFR_RNDN);
    return r;
}

namespace {

BigFloat lead_value(const SeriesSpec& s) { return s.lead.empty() ? BigFloat(0) : eval_bigfloat(s.lead); }

BigFloat abs_rat(const Rat& r) { return to_bigfloat(abs(r)); }

} // namespace

SeriesValue eval_series(const SeriesSpec& s, long M, const BigFloatCtx& ctx) {
    PrecisionGuard g(ctx.digits);
    SeriesValue out;
    BigFloat sum = 0;
    for (long k = 0; k < M; ++k) sum += to_bigfloat(series_term(s, s.start + k));
    out.value = lead_value(s) + (s.sign < 0 ? -sum : sum);
    out.terms = M;

    // first omitted term over (1 - rho), rho the largest ratio seen next
    Rat first = series_term(s, s.start + M);
    Rat prev = first;
    BigFloat rho = s.base ? abs_rat(*s.base) : BigFloat(0);
    for (long k = 1; k <= 4 && prev != 0; ++k) {
        Rat cur = series_term(s, s.start + M + k);
        BigFloat r = abs_rat(cur / prev);
        if (r > rho) rho = r;
        prev = cur;
    }
    if (first == 0) {
        out.tail_bound = 0;
    } else if (rho >= 1) {
        out.tail_bound = std::numeric_limits<BigFloat>::infinity();
    } else {
        out.tail_bound = 2 * abs_rat(first) / (1 - rho);
    }
    return out;
}

BigFloat eval_closed_form(const Expr& value, const BigFloatCtx& ctx) {
    PrecisionGuard g(ctx.digits);
    BigFloat v = eval_bigfloat(value);
    if (!isfinite(v)) throw PoleError("closed form '" + value.text() + "' is not finite");
    return v;
}

double RateMeasurement::rel_error() const {
    if (!declared) return -1;
    double d = to_bigfloat(*declared).convert_to<double>();
    return std::abs(fitted - d) / std::abs(d);
}

RateMeasurement measure_rate(const SeriesSpec& s, long M) {
    if (M < 3) throw DomainError("measure_rate needs at least 3 terms");
    RateMeasurement out;
    out.declared = s.base;
    Rat prev = series_term(s, s.start);
    for (long k = 1; k < M; ++k) {
        Rat cur = series_term(s, s.start + k);
        if (prev == 0 || cur == 0) {
            out.ratios.clear();
        } else {
            out.ratios.push_back(cur / prev);
        }
        prev = cur;
    }
    if (out.ratios.empty()) return out;
    out.last_ratio = out.ratios.back().get_d();

    // r_n ~ b + c1/n + c2/n^2 + ...; cancel the first `order` corrections
    long order = std::min<long>(4, static_cast<long>(out.ratios.size()) - 1);
    long n0 = s.start + static_cast<long>(out.ratios.size()) - 1 - order;
    if (n0 <= 0) {
        out.fitted = out.last_ratio;
        return out;
    }
    Rat acc = 0, fact_j = 1;
    for (long j = 0; j <= order; ++j) {
        if (j > 0) fact_j *= j;
        Rat fact_kj = 1;
        for (long i = 2; i <= order - j; ++i) fact_kj *= i;
        Rat w = 1;
        for (long i = 0; i < order; ++i) w *= n0 + j;
        if ((order - j) % 2) w = -w;
        std::size_t idx = out.ratios.size() - 1 - static_cast<std::size_t>(order - j);
        acc += w * out.ratios[idx] / (fact_j * fact_kj);
    }
    out.fitted = acc.get_d();
    return out;
}

BigFloat balanced_limit(const std::vector<Rat>& a, const std::vector<Rat>& c, const BigFloatCtx& ctx) {
    Rat sa = 0, sc = 0;
    for (const auto& x : a) sa += x;
    for (const auto& x : c) sc += x;
    if (a.size() != c.size() || sa != sc)
        throw ParameterError("product is not balanced: " + sa.get_str() + " vs " + sc.get_str());
    PrecisionGuard g(ctx.digits);
    BigFloat v = 1;
    for (const auto& x : c) v *= gamma_hp(x, ctx);
    for (const auto& x : a) v /= gamma_hp(x, ctx);
    return v;
}

std::vector<Rat> product_exponents(const std::vector<ProductFactor>& v, int root) {
    std::vector<Rat> out;
    for (const auto& f : v) {
        QMonomial base = factor_monomial(f.base, root), arg = factor_monomial(f.arg, root);
        if (base.coeff != 1 || base.e != root) throw ParameterError("factor base '" + f.base.text() + "' is not q");
        if (arg.coeff != 1) throw ParameterError("factor argument '" + f.arg.text() + "' is not a plain q-power");
        out.push_back(Rat(arg.e) / root);
    }
    return out;
}

double q_product_numeric(const std::vector<Rat>& a, const std::vector<Rat>& c, double q) {
    if (!(q > 0 && q < 1)) throw DomainError("q must lie in (0, 1)");
    int sign = 1;
    // log |(x;q)_inf|, flipping sign for each factor 1 - x q^k below zero
    auto log_poch = [q, &sign](double x) {
        double s = 0, term = x;
        while (term > 1e-18) {
            if (term > 1) {
                s += std::log(term - 1);
                sign = -sign;
            } else {
                s += std::log1p(-term);
            }
            term *= q;
        }
        return s;
    };
    double s = 0;
    for (const auto& x : a) s += log_poch(std::pow(q, x.get_d()));
    for (const auto& x : c) s -= log_poch(std::pow(q, x.get_d()));
    return sign * std::exp(s);
}

bool LimitReport::within() const { return abs_diff <= tail_bound + tolerance; }

LimitReport check_limit(const IdentityRecord& r, long M, const BigFloatCtx& ctx) {
    if (!r.classical) throw DomainError("record '" + r.id + "' has no classical limit");
    SeriesSpec s = SeriesSpec::from(*r.classical);
    PrecisionGuard g(ctx.digits);
    LimitReport out;
    out.id = r.id;
    SeriesValue sv = eval_series(s, M, ctx);
    out.series_value = sv.value;
    out.tail_bound = sv.tail_bound;
    out.closed_form_value = eval_closed_form(r.classical->value, ctx);
    out.abs_diff = abs(out.series_value - out.closed_form_value);
    BigFloat scale = abs(out.closed_form_value);
    out.tolerance = ctx.tolerance() * (scale > 1 ? scale : BigFloat(1));
    out.declared_base = s.base;
    out.fitted_base = measure_rate(s, M).fitted;
    out.terms = M;
    out.digits = ctx.digits;
    return out;
}

std::string format_float(const BigFloat& x, unsigned digits) {
    if (isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0) return "0";
    return x.str(static_cast<std::streamsize>(digits), std::ios::scientific);
}

nlohmann::json limit_json(const LimitReport& r) {
    nlohmann::json j;
    unsigned shown = r.digits > 10 ? r.digits - 10 : r.digits;
    j["id"] = r.id;
    j["series_value"] = format_float(r.series_value, shown);
    j["closed_form_value"] = format_float(r.closed_form_value, shown);
    j["abs_diff"] = format_float(r.abs_diff, 6);
    j["tail_bound"] = format_float(r.tail_bound, 6);
    j["within_bound"] = r.within();
    j["declared_base"] = r.declared_base ? nlohmann::json(r.declared_base->get_str()) : nlohmann::json(nullptr);
    std::ostringstream fb;
    fb.precision(12);
    fb << r.fitted_base;
    j["fitted_base"] = fb.str();
    j["terms"] = r.terms;
    j["digits"] = r.digits;
    return j;
}

} // namespace qs
