#include <catch_amalgamated.hpp>

#include "gen.hpp"
#include "oracles.hpp"
#include "qseries/errors.hpp"
#include "qseries/laurent.hpp"
#include "qseries/poly.hpp"
#include "qseries/solve.hpp"

using namespace qs;

namespace {

LaurentSeries geometric(long order) {
    std::vector<Rat> c(static_cast<std::size_t>(order), Rat(1));
    return LaurentSeries::from_coeffs(0, c, order);
}

} // namespace

TEST_CASE("rat parsing and canonical form") {
    CHECK(parse_rat("6/4") == Rat(3, 2));
    CHECK(parse_rat(" -5/6 ") == Rat(-5, 6));
    CHECK(parse_rat("7") == 7);
    CHECK(parse_rat("6/4").get_den() == 2);
    CHECK_THROWS_AS(parse_rat("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rat("x"), ParseError);
    CHECK(rat_pow(Rat(2, 3), -2) == Rat(9, 4));
    CHECK(floor_div(-1, 3) == -1);
    CHECK(floor_div(5, 3) == 1);
}

TEST_CASE("rat field axioms on random triples") {
    gen::source g(11);
    for (int i = 0; i < 200; ++i) {
        Rat a = g.rational(50, 40), b = g.rational(50, 40), c = g.rational(50, 40);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        if (a != 0) CHECK(a * (1 / a) == 1);
        Rat s = a * b + c;
        CHECK(s.get_den() > 0);
        Rat copy = s;
        copy.canonicalize();
        CHECK(copy == s);
    }
}

TEST_CASE("laurent products") {
    LaurentSeries one_minus_t = LaurentSeries(1) - LaurentSeries::monomial(1, 1);
    LaurentSeries p = ls_mul(one_minus_t, geometric(10));
    CHECK(p.order() == 10);
    CHECK(p == LaurentSeries::from_coeffs(0, {Rat(1)}, 10));

    CHECK(ls_mul(LaurentSeries::monomial(1, -3), LaurentSeries::monomial(1, 5)) == LaurentSeries::monomial(1, 2));

    LaurentSeries a = LaurentSeries(1) - LaurentSeries::monomial(1, 6);
    LaurentSeries b = LaurentSeries(1) - LaurentSeries::monomial(1, 18);
    LaurentSeries expect = LaurentSeries(1) - LaurentSeries::monomial(1, 6) - LaurentSeries::monomial(1, 18) +
                           LaurentSeries::monomial(1, 24);
    CHECK(ls_mul(a, b) == expect);
}

TEST_CASE("product order follows valuations") {
    // O(t^10) series times t^-3 exact gives O(t^7)
    LaurentSeries s = geometric(10);
    CHECK(ls_mul(s, LaurentSeries::monomial(1, -3)).order() == 7);
    // two truncated series: min(oa + vb, ob + va)
    LaurentSeries x = LaurentSeries::from_coeffs(2, {Rat(1), Rat(1)}, 8);
    LaurentSeries y = LaurentSeries::from_coeffs(-1, {Rat(1)}, 5);
    CHECK(ls_mul(x, y).order() == std::min(8 - 1, 5 + 2));
    CHECK((x + y).order() == 5);
}

TEST_CASE("laurent inverse") {
    CHECK(ls_inv(LaurentSeries(1)) == LaurentSeries(1));
    LaurentSeries s = (LaurentSeries(1) - LaurentSeries::monomial(1, 1)).truncated(4);
    LaurentSeries inv = ls_inv(s);
    CHECK(inv == LaurentSeries::from_coeffs(0, {1, 1, 1, 1}, 4));

    LaurentSeries u = (LaurentSeries(1) - LaurentSeries::monomial(1, -10)).truncated(50);
    LaurentSeries w = ls_inv(u);
    CHECK(w.valuation() == 10);
    CHECK(w.lead() == -1);
    CHECK(w.coeff(20) == -1);
    CHECK(w.coeff(15) == 0);
    LaurentSeries back = ls_mul(u, w);
    CHECK_FALSE(first_difference(back, LaurentSeries(1)).has_value());

    CHECK_THROWS_AS(ls_inv(LaurentSeries::zero(5)), ZeroLeadingCoefficient);
}

TEST_CASE("exact polynomial division of laurent polynomials") {
    LaurentSeries a = LaurentSeries(1) - LaurentSeries::monomial(1, 6);
    LaurentSeries b = LaurentSeries(1) - LaurentSeries::monomial(1, 18);
    LaurentSeries ab = ls_mul(a, b);
    CHECK(ls_div(ab, a) == b);
    CHECK_THROWS_AS(ls_div(b, a.shifted(1) + LaurentSeries(3)), ExactDivisionFailed);
}

TEST_CASE("property: laurent inverse is two-sided") {
    gen::source g(12);
    for (int i = 0; i < 100; ++i) {
        long order = g.integer(5, 40);
        LaurentSeries s = g.series(-6, 4, g.integer(1, 8), order);
        LaurentSeries inv = ls_inv(s);
        LaurentSeries left = ls_mul(s, inv), right = ls_mul(inv, s);
        CHECK(left.order() >= 0);
        CHECK_FALSE(first_difference(left, LaurentSeries(1)).has_value());
        CHECK_FALSE(first_difference(right, LaurentSeries(1)).has_value());
    }
}

TEST_CASE("property: serial and parallel products agree") {
    gen::source g(13);
    for (int i = 0; i < 30; ++i) {
        LaurentSeries a = g.series(-5, 5, g.integer(1, 60), 80);
        LaurentSeries b = g.series(-5, 5, g.integer(1, 60), g.coin() ? 70 : LaurentSeries::exact);
        CHECK(ls_mul_serial(a, b) == ls_mul_parallel(a, b));
    }
}

TEST_CASE("poly arithmetic and gcd") {
    Poly t = Poly::monomial(1, 1);
    Poly p = (t - Poly(1)) * (t + Poly(2));
    Poly q = (t - Poly(1)) * (t + Poly(3));
    CHECK(gcd(p, q) == t - Poly(1));
    CHECK((p * q).degree() == 4);
    CHECK_THROWS_AS(exact_div(p, t + Poly(3)), ExactDivisionFailed);

    gen::source g(14);
    for (int i = 0; i < 100; ++i) {
        Poly a = g.poly(5), b = g.poly(5), c = g.poly(3);
        if (c.is_zero()) c = Poly(1);
        Poly x = a * c, y = b * c;
        Poly d = gcd(x, y);
        if (x.is_zero() && y.is_zero()) continue;
        CHECK(divmod(x, d).second.is_zero());
        CHECK(divmod(y, d).second.is_zero());
        CHECK(exact_div(x, d) * d == x);
        if (!a.is_zero() && !b.is_zero()) CHECK((a * b).degree() == a.degree() + b.degree());
    }
}

TEST_CASE("ratfunc normalization") {
    Poly t = Poly::monomial(1, 1);
    RatFunc r((t - Poly(1)) * Poly(Rat(2)), (t - Poly(1)) * (t + Poly(1)) * Poly(Rat(4)));
    CHECK(r.den() == t + Poly(1));
    CHECK(r.num() == Poly(Rat(1, 2)));
}

TEST_CASE("solver basic cases") {
    PolyMatrix I = {{Poly(1), Poly(), Poly()}, {Poly(), Poly(1), Poly()}, {Poly(), Poly(), Poly(1)}};
    auto r = poly_solve_overdetermined(I, {Poly(1), Poly(2), Poly(3)});
    REQUIRE(r.consistent);
    CHECK(r.x[0] == RatFunc(Poly(1)));
    CHECK(r.x[2] == RatFunc(Poly(3)));

    Poly t = Poly::monomial(1, 1);
    auto r2 = poly_solve_overdetermined({{t}, {t * t}}, {t * t, t * t * t});
    REQUIRE(r2.consistent);
    CHECK(r2.x[0] == RatFunc(t));

    auto r3 = poly_solve_overdetermined({{t}, {t * t}}, {t * t, t});
    CHECK_FALSE(r3.consistent);
    CHECK(r3.x.empty());

    // rank deficient but consistent: second column is twice the first
    auto r4 = poly_solve_overdetermined({{Poly(1), Poly(2)}, {t, t * Poly(2)}, {t * t, t * t * Poly(2)}},
                                        {Poly(3), t * Poly(3), t * t * Poly(3)});
    REQUIRE(r4.consistent);
    CHECK(r4.rank == 1);
}

TEST_CASE("property: solver agrees with Cramer's rule") {
    gen::source g(15);
    for (int n : {2, 3}) {
        int done = 0;
        while (done < 100) {
            PolyMatrix A(n, std::vector<Poly>(n));
            std::vector<Poly> b(n);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) A[i][j] = g.poly(2, 4);
                b[i] = g.poly(2, 4);
            }
            Poly D = oracle::det(A);
            if (D.is_zero()) continue;
            ++done;
            auto r = poly_solve_overdetermined(A, b);
            REQUIRE(r.consistent);
            for (int j = 0; j < n; ++j) {
                PolyMatrix Aj = A;
                for (int i = 0; i < n; ++i) Aj[i][j] = b[i];
                CHECK(r.x[j] == RatFunc(oracle::det(Aj), D));
            }
        }
    }
}
