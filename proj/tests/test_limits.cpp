#include <catch_amalgamated.hpp>

#include <boost/math/constants/constants.hpp>

#include "qseries/limits.hpp"

using namespace qs;

namespace {

const Catalog& shipped() {
    static const Catalog c = load_catalog(default_catalog_path());
    return c;
}

const IdentityRecord& rec(const std::string& id) {
    const IdentityRecord* r = shipped().find(id);
    REQUIRE(r != nullptr);
    return *r;
}

BigFloat pi60() {
    PrecisionGuard g(60);
    return boost::math::constants::pi<BigFloat>();
}

SeriesSpec plain(const std::string& term, std::optional<Rat> base = std::nullopt) {
    SeriesSpec s;
    s.term = Expr::parse(term);
    s.base = base;
    return s;
}

bool close(const BigFloat& a, const BigFloat& b, const BigFloat& tol) { return abs(a - b) <= tol; }

BigFloat ten_to(long k) {
    PrecisionGuard g(200);
    return pow(BigFloat(10), k);
}

} // namespace

TEST_CASE("gamma at rationals") {
    BigFloatCtx ctx;
    PrecisionGuard g(ctx.digits);
    BigFloat pi = pi60();
    CHECK(gamma_hp(1, ctx) == 1);
    CHECK(close(gamma_hp(Rat(1) / 2, ctx), sqrt(pi), ctx.tolerance()));
    CHECK(close(gamma_hp(Rat(5) / 2, ctx), 3 * sqrt(pi) / 4, ctx.tolerance()));
    // reflection Γ(x)Γ(1-x) = π / sin(πx) at x = 1/3
    CHECK(close(gamma_hp(Rat(1) / 3, ctx) * gamma_hp(Rat(2) / 3, ctx), 2 * pi / sqrt(BigFloat(3)), ctx.tolerance()));
    CHECK(close(gamma_hp(Rat(1) / 6, ctx) * gamma_hp(Rat(5) / 6, ctx), 2 * pi, ctx.tolerance()));
    CHECK_THROWS_AS(gamma_hp(0), PoleError);
    CHECK_THROWS_AS(gamma_hp(-3), PoleError);
    CHECK_NOTHROW(gamma_hp(Rat(-7) / 2));
}

TEST_CASE("gamma at higher precision") {
    BigFloatCtx ctx{150, 10};
    PrecisionGuard g(150);
    BigFloat pi = boost::math::constants::pi<BigFloat>();
    CHECK(close(gamma_hp(Rat(1) / 4, ctx) * gamma_hp(Rat(3) / 4, ctx), pi * sqrt(BigFloat(2)), ctx.tolerance()));
}

TEST_CASE("simple series") {
    SeriesValue z = eval_series(plain("0*n/(2^n)", Rat(1) / 2), 40);
    CHECK(z.value == 0);
    CHECK(z.tail_bound == 0);

    SeriesValue geo = eval_series(plain("1/(2^n)", Rat(1) / 2), 40);
    PrecisionGuard g(60);
    BigFloat exact_partial = 2 - pow(BigFloat(2), -39);
    CHECK(close(geo.value, exact_partial, ten_to(-50)));
    CHECK(abs(BigFloat(2) - geo.value) <= geo.tail_bound);

    RateMeasurement m = measure_rate(plain("1/(2^n)", Rat(1) / 2), 10);
    REQUIRE(m.ratios.size() == 9);
    for (const auto& r : m.ratios) CHECK(r == Rat(1) / 2);
    CHECK(m.fitted == Catch::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(measure_rate(plain("1/(2^n)"), 2), DomainError);
}

TEST_CASE("degenerate term names its index") {
    try {
        eval_series(plain("1/((n-3)*2^n)"), 10);
        FAIL("expected DegenerateTerm");
    } catch (const DegenerateTerm& e) {
        CHECK(std::string(e.what()).find("term 3") != std::string::npos);
    }
}

TEST_CASE("lead and sign enter the value") {
    SeriesSpec s = plain("1/(3^n)", Rat(1) / 3);
    s.lead = Expr::parse("5");
    s.sign = -1;
    s.start = 1;
    SeriesValue v = eval_series(s, 60);
    PrecisionGuard g(60);
    CHECK(close(v.value, BigFloat(9) / 2, v.tail_bound + ten_to(-50)));
}

TEST_CASE("quadratic pi series at 60 digits") {
    LimitReport r = check_limit(rec("g1x5pp"), 40, {60, 10});
    PrecisionGuard g(60);
    BigFloat pi = pi60();
    CHECK(abs(r.series_value - 32 / (pi * pi)) < ten_to(-40));
    CHECK(abs(r.closed_form_value - 32 / (pi * pi)) < ten_to(-50));
    CHECK(r.within());
}

TEST_CASE("cubic surd series at 60 digits") {
    PrecisionGuard g(60);
    BigFloat pi = pi60(), s3 = sqrt(BigFloat(3)), c2 = cbrt(BigFloat(2));
    LimitReport a = check_limit(rec("v3x1a"), 40, {60, 10});
    CHECK(abs(a.series_value - 9 * s3 / (2 * c2 * pi)) < ten_to(-40));
    LimitReport b = check_limit(rec("v3x1b"), 40, {60, 10});
    CHECK(abs(b.series_value - 27 * s3 / (2 * c2 * c2 * pi)) < ten_to(-40));
}

TEST_CASE("every catalogued classical series meets its closed form") {
    int n = 0;
    for (const auto& r : shipped().records) {
        if (!r.classical) continue;
        ++n;
        LimitReport L = check_limit(r, 40, {60, 10});
        INFO(r.id << " diff " << format_float(L.abs_diff, 4) << " bound " << format_float(L.tail_bound, 4));
        CHECK(L.within());
        CHECK(L.abs_diff < ten_to(-40));
    }
    CHECK(n > 0);
}

TEST_CASE("precision stability") {
    for (const auto& r : shipped().records) {
        if (!r.classical) continue;
        LimitReport lo = check_limit(r, 40, {60, 10});
        LimitReport hi = check_limit(r, 40, {120, 10});
        PrecisionGuard g(120);
        INFO(r.id);
        BigFloat scale = abs(hi.series_value) > 1 ? abs(hi.series_value) : BigFloat(1);
        CHECK(abs(lo.series_value - hi.series_value) <= ten_to(-40) * scale);
        CHECK(abs(lo.closed_form_value - hi.closed_form_value) <= ten_to(-40) * scale);
    }
}

TEST_CASE("term decay follows the declared base") {
    for (const auto& r : shipped().records) {
        if (!r.classical || !r.classical->rate) continue;
        SeriesSpec s = SeriesSpec::from(*r.classical);
        Rat base = abs(*r.classical->rate);
        auto scaled = [&](long M) {
            Rat p = 1;
            for (long i = 0; i < M; ++i) p *= base;
            Rat u = abs(series_term(s, s.start + M)) / p;
            return u;
        };
        // |T_M| / |base|^M ~ C M^alpha; fit alpha and C on M = 10..20, then check M = 21..60
        double alpha = std::log(Rat(scaled(20) / scaled(10)).get_d()) / std::log(2.0);
        double C = 0;
        for (long M = 10; M <= 20; ++M) C = std::max(C, scaled(M).get_d() / std::pow(M, alpha));
        INFO(r.id << " alpha " << alpha);
        for (long M = 21; M <= 60; ++M) CHECK(scaled(M).get_d() <= 1.5 * C * std::pow(M, alpha));
    }
}

TEST_CASE("fitted rates by n = 30") {
    RateMeasurement g = measure_rate(SeriesSpec::from(*rec("g1x5pp").classical), 30);
    CHECK(std::abs(g.fitted - 1.0 / 16) < 0.01 / 16);
    RateMeasurement v = measure_rate(SeriesSpec::from(*rec("v3x1a").classical), 30);
    CHECK(std::abs(v.fitted + 1.0 / 27) < 0.01 / 27);
    for (const auto& r : shipped().records) {
        if (!r.classical || !r.classical->rate) continue;
        RateMeasurement m = measure_rate(SeriesSpec::from(*r.classical), 30);
        INFO(r.id << " fitted " << m.fitted);
        CHECK(m.rel_error() >= 0);
        CHECK(m.rel_error() < 0.01);
    }
}

TEST_CASE("balanced product limit") {
    const IdentityRecord& r = rec("g1x5pp");
    std::vector<Rat> a = product_exponents(r.lhs_num), c = product_exponents(r.lhs_den);
    PrecisionGuard g(60);
    BigFloat pi = pi60();
    CHECK(close(balanced_limit(a, c), 4 / (3 * pi * pi), ten_to(-50)));
    CHECK_THROWS_AS(balanced_limit({Rat(1) / 2}, {Rat(1)}), ParameterError);
    CHECK_THROWS_AS(balanced_limit({Rat(1) / 2, Rat(1) / 2}, {Rat(1)}), ParameterError);
}

TEST_CASE("balanced limit agrees with the q-product near q = 1") {
    int bridged = 0;
    for (const auto& r : shipped().records) {
        std::vector<Rat> a, c;
        try {
            a = product_exponents(r.lhs_num);
            c = product_exponents(r.lhs_den);
        } catch (const ParameterError&) {
            continue;
        }
        Rat sa = 0, sc = 0;
        for (const auto& x : a) sa += x;
        for (const auto& x : c) sc += x;
        if (a.size() != c.size() || sa != sc) continue;
        double lim = balanced_limit(a, c).convert_to<double>();
        double num = q_product_numeric(a, c, 1 - 1e-4);
        INFO(r.id << " limit " << lim << " numeric " << num);
        CHECK(std::abs(lim - num) < 1e-2);
        ++bridged;
    }
    CHECK(bridged >= 3);
}

TEST_CASE("limit JSON") {
    LimitReport r = check_limit(rec("g1x5pp"));
    nlohmann::json j = limit_json(r);
    for (const char* k : {"id", "series_value", "closed_form_value", "abs_diff", "declared_base", "fitted_base", "terms", "digits"})
        CHECK(j.contains(k));
    CHECK(j["declared_base"] == "1/16");
    CHECK(j["terms"] == 40);
    CHECK(j["digits"] == 60);
    CHECK(j["series_value"].get<std::string>().rfind("3.24227787655", 0) == 0);
    CHECK(limit_json(check_limit(rec("g1x5pp"))).dump() == j.dump());
    CHECK_THROWS_AS(check_limit(rec("2U-02"), 2), DomainError);
}
