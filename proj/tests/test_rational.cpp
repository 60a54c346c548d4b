#include <doctest.h>

#include "hydroham/rational.hpp"
#include "test_support.hpp"

using namespace hydroham;
using hydroham::testing::random_poly;
using hydroham::testing::random_nonzero_poly;
using hydroham::testing::random_ratfn;

namespace {

RationalFn rf(const std::string& s, int n) { return parse_expr(s, n); }

} // namespace

TEST_CASE("rational number normal form") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 5) == Rational(0));
    CHECK((Rational(1, 2) + Rational(1, 3)) == Rational(5, 6));
    CHECK((Rational(1, 2) * Rational(2, 3)) == Rational(1, 3));
    CHECK_THROWS_AS(Rational(1, 0), DivisionByZero);
    CHECK_THROWS_AS(Rational(1).operator/(Rational(0)), DivisionByZero);
}

TEST_CASE("field operations on rational functions") {
    // like-term addition: 1/v1 + 1/v1 = 2/v1
    RationalFn a = rf("1/v1", 2);
    CHECK(a + a == rf("2/v1", 2));
    // inverse pair: (v1/v2)*(v2/v1) = 1
    CHECK(rf("v1/v2", 2) * rf("v2/v1", 2) == RationalFn::constant(2, Rational(1)));
    // division by the zero function
    CHECK_THROWS_AS(rf("(v1+v2)/v1", 2) / RationalFn(2), DivisionByZero);
}

TEST_CASE("partial derivatives") {
    CHECK(rf("v1*v2", 2).partial(0) == rf("v2", 2));
    CHECK(rf("1/v1", 1).partial(0) == rf("-1/(v1^2)", 1));
    CHECK(rf("v1", 2).partial(1) == RationalFn(2));
}

TEST_CASE("parser accepts the documented grammar") {
    RationalFn p = rf("v1^2 + 1/2", 2);
    Poly expected(2);
    expected.add_term({2, 0}, Rational(1));
    expected.add_term({0, 0}, Rational(1, 2));
    CHECK(p == RationalFn(expected));

    CHECK(rf("1/u1", 1) == RationalFn(Poly::constant(1, Rational(1)), Poly::variable(1, 0)));
    CHECK_THROWS_AS(rf("v3", 2), UnknownVariable);
    CHECK_THROWS_AS(rf("v0", 2), UnknownVariable);
    CHECK_THROWS_AS(rf("v1 +", 2), SyntaxError);
    CHECK_THROWS_AS(rf("(v1", 2), SyntaxError);
    CHECK_THROWS_AS(rf("w1", 2), SyntaxError);
    CHECK(rf("-v1^2", 1) == -rf("v1", 1) * rf("v1", 1));
    CHECK(rf("2 - -3", 1) == RationalFn::constant(1, Rational(5)));
    CHECK(rf(" ( v1 + v2 ) * 2 ", 2) == rf("2*v1+2*v2", 2));
}

TEST_CASE("print/parse round trip") {
    std::mt19937 rng(7);
    for (int i = 0; i < 60; ++i) {
        RationalFn f = random_ratfn(rng, 3);
        CHECK(parse_expr(to_string(f), 3) == f);
    }
    CHECK(to_string(RationalFn(3)) == "0");
    CHECK(parse_expr(to_string(RationalFn(3)), 3) == RationalFn(3));
}

TEST_CASE("product rule holds on random inputs") {
    std::mt19937 rng(11);
    for (int i = 0; i < 40; ++i) {
        RationalFn f = random_ratfn(rng, 2);
        RationalFn g = random_ratfn(rng, 2);
        for (int a = 0; a < 2; ++a) {
            RationalFn lhs = (f * g).partial(a);
            RationalFn rhs = f.partial(a) * g + f * g.partial(a);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("field axioms hold exactly on random triples") {
    std::mt19937 rng(13);
    for (int i = 0; i < 25; ++i) {
        RationalFn f = random_ratfn(rng, 2);
        RationalFn g = random_ratfn(rng, 2);
        RationalFn h = random_ratfn(rng, 2);
        CHECK((f + g) + h == f + (g + h));
        CHECK((f * g) * h == f * (g * h));
        CHECK(f * (g + h) == f * g + f * h);
        CHECK(f + g == g + f);
        CHECK(f * g == g * f);
        if (!h.is_zero())
            CHECK((f / h) * h == f);
    }
}

TEST_CASE("gcd cancellation makes equality canonical") {
    std::mt19937 rng(17);
    for (int i = 0; i < 25; ++i) {
        Poly p = random_poly(rng, 2);
        Poly q = random_nonzero_poly(rng, 2);
        Poly h = random_nonzero_poly(rng, 2);
        // (p*h)/(q*h) must reduce to p/q
        CHECK(RationalFn(p * h, q * h) == RationalFn(p, q));
    }
    // canonical denominators: leading coefficient positive, integer primitive
    RationalFn f = rf("v1/(2*v2)", 2);
    CHECK(f.den() == Poly::variable(2, 1));
    CHECK(f.num() == Poly::variable(2, 0).scaled(Rational(1, 2)));
    RationalFn g = rf("v1/(-v2)", 2);
    CHECK(g.den() == Poly::variable(2, 1));
    CHECK(g.num() == Poly::variable(2, 0).scaled(Rational(-1)));
}

TEST_CASE("polynomial composition and evaluation") {
    // substitute v1 -> v1 + v2^2
    Poly image = Poly::variable(2, 0) + Poly::variable(2, 1) * Poly::variable(2, 1);
    std::vector<Poly> images = {image, Poly::variable(2, 1)};
    RationalFn f = rf("v1^2 - v2", 2);
    RationalFn g = f.compose(images);
    CHECK(g == rf("(v1 + v2^2)^2 - v2", 2));
    CHECK(f.eval({Rational(2), Rational(3)}) == Rational(1));
}
