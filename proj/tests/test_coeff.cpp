#include <doctest.h>

#include "orbitstar/parse.hpp"
#include "orbitstar/poly.hpp"
#include "test_util.hpp"

using namespace orbitstar;

namespace {
Poly P(const std::string& s, int n = 3) { return parse_expr(s, n); }
}  // namespace

TEST_CASE("rational and h-polynomial basics") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(rat_to_string(Rational(-3, 2)) == "-3/2");
    HPoly a(Rational(1));
    HPoly b = HPoly::h();
    CHECK((a + b).to_string() == "1 + h");
    CHECK((b * b).to_string() == "h^2");
    CHECK((b - b).is_zero());
    CHECK(HPoly(Rational(1), 2).divided_by_h(2) == HPoly(Rational(1)));
}

TEST_CASE("poly_add examples") {
    CHECK((P("x1") + P("-x1")).is_zero());
    CHECK(P("x1*h") + P("x1") == P("(1+h)*x1"));
    CHECK(P("x1^2*x2 + 3/2*x3") + P("x3/2") == P("x1^2*x2 + 2*x3"));
}

TEST_CASE("poly_mul examples") {
    Poly f = P("x1^2*x2 - 7*x3 + h*x1");
    CHECK(P("1") * f == f);
    CHECK(P("x1+x2") * P("x1-x2") == P("x1^2 - x2^2"));
    CHECK(P("h*x1") * P("h*x1") == P("h^2*x1^2"));
}

TEST_CASE("poly_partial examples and errors") {
    CHECK(P("x1^2*x2").partial(1) == P("2*x1*x2"));
    CHECK(P("x1^2").partial(2).is_zero());
    CHECK(P("h*x1").partial(1) == P("h"));
    CHECK_THROWS_AS(P("x1").partial(4), std::invalid_argument);
    CHECK_THROWS_AS(P("x1").partial(0), std::invalid_argument);
}

TEST_CASE("variable count mismatch is a usage error") {
    CHECK_THROWS_AS(P("x1", 2) + P("x1", 3), std::invalid_argument);
    CHECK_THROWS_AS(P("x1", 2) * P("x1", 3), std::invalid_argument);
}

TEST_CASE("term order: graded, ties to highest index variable") {
    // leading monomial of the su2 quadric must be x3^2
    CHECK(P("x1^2+x2^2+x3^2").leading().first == Monomial{0, 0, 2});
    GrevlexLess less;
    CHECK(less(Monomial{2, 0, 0}, Monomial{0, 0, 2}));
    CHECK(less(Monomial{2, 0, 0}, Monomial{0, 2, 0}));
    CHECK(less(Monomial{0, 0, 2}, Monomial{1, 1, 1}));  // degree wins
}

TEST_CASE("ring axioms on randomized inputs") {
    std::mt19937_64 rng(testutil::default_seed());
    for (int it = 0; it < 40; ++it) {
        Poly a = testutil::random_poly(rng, 3, 3, 5, true);
        Poly b = testutil::random_poly(rng, 3, 3, 5, true);
        Poly c = testutil::random_poly(rng, 3, 3, 5, true);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("Leibniz rule on random pairs") {
    std::mt19937_64 rng(testutil::default_seed() + 1);
    for (int it = 0; it < 30; ++it) {
        Poly f = testutil::random_poly(rng, 3, 4, 5, true);
        Poly g = testutil::random_poly(rng, 3, 4, 5, true);
        for (int i = 1; i <= 3; ++i)
            CHECK((f * g).partial(i) == f.partial(i) * g + f * g.partial(i));
    }
}

TEST_CASE("parse(print(f)) == f") {
    std::mt19937_64 rng(testutil::default_seed() + 2);
    for (int it = 0; it < 40; ++it) {
        Poly f = testutil::random_poly(rng, 3, 4, 6, true);
        CHECK(parse_expr(f.to_string(), 3) == f);
    }
    CHECK(parse_expr("0", 3).is_zero());
}

TEST_CASE("parser diagnostics") {
    CHECK_THROWS_WITH_AS(parse_expr("x1^(-1)", 3), doctest::Contains("negative exponent"),
                         ParseError);
    CHECK_THROWS_AS(parse_expr("x9", 3), ParseError);
    CHECK_THROWS_AS(parse_expr("x1/x2", 3), ParseError);
    CHECK_THROWS_AS(parse_expr("x1 +", 3), ParseError);
    CHECK(parse_expr("3/2*h*x1 - x2^3", 3) ==
          P("3*h*x1/2") - P("x2^3"));
}
