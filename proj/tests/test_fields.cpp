#include <catch_amalgamated.hpp>

#include "gen.hpp"
#include "qseries/field.hpp"

using namespace qs;

namespace {

QMonomial qp(const char* x) { return QMonomial::q_power(parse_rat(x)); }

} // namespace

TEST_CASE("rational field evaluates monomials at q = t^root") {
    RatField f{Rat(1, 2)};
    CHECK(f.mono(qp("1/2")) == Rat(1, 64));
    CHECK(f.mono(QMonomial{Rat(3), -2, 0, 0}) == 12);
    CHECK(f.one_minus(qp("1")) == Rat(4095, 4096));
    CHECK_THROWS_AS(div_binom(f, f.one(), QMonomial{}), VanishingDenominatorFactor);
}

TEST_CASE("series field truncates everything at its order") {
    SeriesField f{30};
    auto v = f.mul(f.one_minus(qp("1")), f.one_minus(qp("1")));
    CHECK(v.order() == 30);
    CHECK(v.coeff(12) == -2);
    CHECK(v.coeff(24) == 1);
    CHECK(f.with_order(10).order == 10);
}

TEST_CASE("negative pochhammer length inverts") {
    // (x;q)_{-1} = 1/(1 - x/q)
    RatField f{Rat(2, 3)};
    QMonomial x{Rat(5), 3, 0, 0};
    Rat expect = 1 / (1 - f.mono(x / QMonomial::q()));
    CHECK(poch(f, x, QMonomial::q(), -1) == expect);
    // (x;q)_{n} (x q^n;q)_{-n} = 1
    for (long n = 0; n < 5; ++n)
        CHECK(f.mul(poch(f, x, QMonomial::q(), n), poch(f, x * QMonomial::q().pow(n), QMonomial::q(), -n)) == 1);
}

TEST_CASE("regularized binomials") {
    RegField f{60};
    QMonomial one_w{Rat(1), 0, 7, 0};
    RegValue z = f.one_minus(one_w);
    CHECK(z.eps == 1);
    CHECK(z.coeff == LaurentSeries(Rat(-7)));
    CHECK(f.one_minus(QMonomial{}).structural_zero);
    CHECK_THROWS_AS(f.div(f.one(), f.one_minus(QMonomial{})), VanishingDenominatorFactor);

    // (1 - m)/(1 - m) = 1 at leading order, and pole orders add
    RegValue r = f.div(z, z);
    CHECK(r.eps == 0);
    CHECK_FALSE(first_difference(r.coeff, LaurentSeries(1)));
    CHECK(f.div(f.one(), z).eps == -1);

    // the lower perturbation order dominates a sum
    RegValue s = f.add(f.one(), f.div(f.one(), z));
    CHECK(s.eps == -1);
    // equal leading orders that cancel cannot be resolved
    CHECK_THROWS_AS(f.add(z, f.neg(z)), RegularizationCancellation);
}

TEST_CASE("regularized values agree with the plain series when nothing vanishes") {
    RegField rf{80};
    SeriesField sf{80};
    QMonomial x = qp("1/3"), y = qp("5/4");
    RegValue r = rf.div(rf.one_minus(x), rf.add(rf.one_minus(y), rf.mono(x)));
    LaurentSeries s = sf.div(sf.one_minus(x), sf.add(sf.one_minus(y), sf.mono(x)));
    CHECK(r.eps == 0);
    CHECK_FALSE(first_difference(r.coeff, s));
}

TEST_CASE("bipoly arithmetic and exact division") {
    gen::source g(3);
    for (int trial = 0; trial < 40; ++trial) {
        BiPoly a, b;
        for (int k = 0; k < 3; ++k) {
            QMonomial m = g.monomial(-5, 5);
            m.ypow = static_cast<int>(g.integer(-1, 3));
            a += BiPoly::mono(m);
            QMonomial n = g.monomial(-5, 5);
            n.ypow = static_cast<int>(g.integer(0, 2));
            b += BiPoly::mono(n);
        }
        if (a.is_zero() || b.is_zero()) continue;
        BiPoly p = a * b;
        CHECK(exact_div(p, b) == a);
        CHECK(exact_div(p, a) == b);
        CHECK(p - a * b == BiPoly());
    }
    BiPoly one_minus_y = BiPoly(Rat(1)) - BiPoly::mono(QMonomial{Rat(1), 0, 0, 1});
    BiPoly one_plus_y = BiPoly(Rat(1)) + BiPoly::mono(QMonomial{Rat(1), 0, 0, 1});
    CHECK_THROWS_AS(exact_div(one_minus_y, one_plus_y), ExactDivisionFailed);
}

TEST_CASE("y-field keeps rational functions of q^n") {
    YField f;
    QMonomial y{Rat(1), 0, 0, 1};
    // (1 - y^2)/(1 - y) has numerator divisible by the denominator
    YRat v = f.div(f.one_minus(y.pow(2)), f.one_minus(y));
    BiPoly quotient = exact_div(v.num, v.den);
    CHECK(quotient == BiPoly(Rat(1)) + BiPoly::mono(y));
}

TEST_CASE("power handles negative exponents") {
    RatField f{Rat(1, 3)};
    CHECK(power(f, Rat(2), 10) == 1024);
    CHECK(power(f, Rat(2), -3) == Rat(1, 8));
    CHECK(power(f, Rat(5), 0) == 1);
}
