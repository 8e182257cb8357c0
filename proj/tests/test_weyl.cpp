#include <doctest.h>

#include <random>

#include "orbitstar/parse.hpp"
#include "orbitstar/weyl.hpp"
#include "test_util.hpp"

using namespace orbitstar;

namespace {

// Independent Moyal oracle on the (q,p) plane with deformation parameter
// h*theta: f * g = sum_k (h theta / 2)^k / k! * Lambda^k(f,g), where
// Lambda = d_q (x) d_p - d_p (x) d_q. Terminates on polynomials.
Poly moyal_oracle(const Poly& f, const Poly& g, const Rational& theta) {
    // bidifferential expansion: Lambda^k(f,g) =
    //   sum_j (-1)^j C(k,j) d_q^{k-j} d_p^j f * d_q^j d_p^{k-j} g
    Poly out(f.nvars());
    int k = 0;
    for (;;) {
        Poly term(f.nvars());
        bool nonzero = false;
        Rational binom(1);
        for (int j = 0; j <= k; ++j) {
            Poly df = f, dg = g;
            for (int t = 0; t < k - j; ++t) df = df.partial(1);
            for (int t = 0; t < j; ++t) df = df.partial(2);
            for (int t = 0; t < j; ++t) dg = dg.partial(1);
            for (int t = 0; t < k - j; ++t) dg = dg.partial(2);
            if (!df.is_zero() && !dg.is_zero()) nonzero = true;
            Rational sign = (j % 2 == 0) ? Rational(1) : Rational(-1);
            term += sign * binom * (df * dg);
            binom = binom * Rational(k - j) / Rational(j + 1);
        }
        Rational fact(1);
        for (int t = 2; t <= k; ++t) fact *= t;
        Rational scale(1);
        for (int t = 0; t < k; ++t) scale *= theta / 2;
        out += (scale / fact) * term.mul_h(k);
        if (!nonzero && k > 0) break;
        ++k;
        if (k > 64) break;  // silence paranoia; polynomials terminate long before
    }
    return out;
}

}  // namespace

TEST_CASE("sym on monomials") {
    LieAlgebra su2 = catalog_algebra("su2");
    PBWContext pbw(su2);
    SymContext ctx(pbw);
    CHECK(ctx.sym(parse_expr("1", 3)) == PBWElement::unit());
    CHECK(ctx.sym(parse_expr("x1", 3)) == PBWElement::basis_word(Word{1}));
    // sym(x1^k) = word (1,..,1)
    CHECK(ctx.sym(parse_expr("x1^4", 3)) == PBWElement::basis_word(Word{1, 1, 1, 1}));
    // su2: sym(x1 x2) = word(1,2) - (h/2) word(3)
    PBWElement s = ctx.sym(parse_expr("x1*x2", 3));
    CHECK(s.coeff(Word{1, 2}) == HPoly(Rational(1)));
    CHECK(s.coeff(Word{3}) == HPoly(Rational(-1, 2), 1));
    CHECK(s.terms().size() == 2);

    LieAlgebra heis = catalog_algebra("heisenberg");
    PBWContext hpbw(heis);
    SymContext hctx(hpbw);
    PBWElement hs = hctx.sym(parse_expr("x1*x2", 3));
    CHECK(hs.coeff(Word{1, 2}) == HPoly(Rational(1)));
    CHECK(hs.coeff(Word{3}) == HPoly(Rational(-1, 2), 1));
}

TEST_CASE("sym_inv inverts sym") {
    LieAlgebra su2 = catalog_algebra("su2");
    PBWContext pbw(su2);
    SymContext ctx(pbw);
    CHECK(ctx.sym_inv(PBWElement::unit()) == parse_expr("1", 3));
    CHECK(ctx.sym_inv(PBWElement::basis_word(Word{1, 2})) ==
          parse_expr("x1*x2 + h/2*x3", 3));
    std::mt19937_64 rng(testutil::default_seed() + 30);
    for (int it = 0; it < 50; ++it) {
        Poly f = testutil::random_poly(rng, 3, 5, 6, true);
        CHECK(ctx.sym_inv(ctx.sym(f)) == f);
    }
}

TEST_CASE("star_s values on su2") {
    LieAlgebra su2 = catalog_algebra("su2");
    PBWContext pbw(su2);
    SymContext ctx(pbw);
    CHECK(ctx.star_s(parse_expr("x1", 3), parse_expr("x2", 3)) ==
          parse_expr("x1*x2 + h/2*x3", 3));
    // Casimir against x1: the PBW oracle fixes the h^2 coefficient
    Poly p = parse_expr("x1^2+x2^2+x3^2", 3);
    Poly expect = p * Poly::variable(3, 1) +
                  Poly::variable(3, 1) * HPoly(Rational(-1, 3), 2);
    CHECK(ctx.star_s(p, Poly::variable(3, 1)) == expect);
}

TEST_CASE("star_s axioms") {
    std::mt19937_64 rng(testutil::default_seed() + 31);
    for (const char* name : {"su2", "heisenberg"}) {
        LieAlgebra A = catalog_algebra(name);
        PBWContext pbw(A);
        SymContext ctx(pbw);
        Poly one = Poly::constant(3, Rational(1));
        for (int it = 0; it < 25; ++it) {
            Poly f = testutil::random_poly(rng, 3, 3, 4);
            Poly g = testutil::random_poly(rng, 3, 3, 4);
            Poly k = testutil::random_poly(rng, 3, 3, 4);
            CHECK(ctx.star_s(ctx.star_s(f, g), k) == ctx.star_s(f, ctx.star_s(g, k)));
            CHECK(ctx.star_s(one, f) == f);
            CHECK(ctx.star_s(f, one) == f);
            // h^0 part is the commutative product
            CHECK(ctx.star_s(f, g).h_coefficient(0) == (f * g).h_coefficient(0));
            // first-order condition
            Poly comm = ctx.star_s(f, g) - ctx.star_s(g, f) -
                        poisson_bracket(f, g, A).mul_h(1);
            CHECK(comm.h_coefficient(0).is_zero());
            CHECK(comm.h_coefficient(1).is_zero());
        }
        // centrality transfer for the invariant
        for (int it = 0; it < 10; ++it) {
            Poly f = testutil::random_poly(rng, 3, 3, 4);
            CHECK(ctx.star_s(A.invariants[0], f) == ctx.star_s(f, A.invariants[0]));
        }
    }
}

TEST_CASE("heisenberg restriction matches the Moyal oracle") {
    LieAlgebra heis = catalog_algebra("heisenberg");
    PBWContext pbw(heis);
    SymContext ctx(pbw);
    Poly q = Poly::variable(3, 1), p = Poly::variable(3, 2);
    // q * p with c=1 -> qp + h/2
    CHECK(restrict_heisenberg_moyal(ctx, q, p, Rational(1)) ==
          parse_expr("x1*x2 + h/2", 3));
    CHECK_THROWS_AS(restrict_heisenberg_moyal(ctx, Poly::variable(3, 3), p, Rational(1)),
                    std::invalid_argument);
    for (const Rational c : {Rational(1), Rational(2), Rational(-1)}) {
        for (int a1 = 0; a1 <= 3; ++a1)
            for (int a2 = 0; a2 + a1 <= 4; ++a2)
                for (int b1 = 0; b1 <= 3; ++b1)
                    for (int b2 = 0; b2 + b1 <= 4; ++b2) {
                        Poly f = Poly::monomial(3, Monomial{a1, a2, 0}, HPoly(Rational(1)));
                        Poly g = Poly::monomial(3, Monomial{b1, b2, 0}, HPoly(Rational(1)));
                        CHECK(restrict_heisenberg_moyal(ctx, f, g, c) ==
                              moyal_oracle(f, g, c));
                    }
    }
}

TEST_CASE("su2 star_s is not tangential: explicit witness") {
    LieAlgebra su2 = catalog_algebra("su2");
    PBWContext pbw(su2);
    SymContext ctx(pbw);
    Rational c(1);
    Poly p = parse_expr("x1^2+x2^2+x3^2", 3);
    Poly lhs = ctx.star_s(p - Poly::constant(3, c), Poly::variable(3, 1));
    // substitute p := c  <=>  reduce modulo the ideal; here direct expansion:
    // (p - c) * x1 part cancels, leaving -(h^2/3) x1
    Poly residue = lhs - (p - Poly::constant(3, c)) * Poly::variable(3, 1);
    CHECK(residue == Poly::variable(3, 1) * HPoly(Rational(-1, 3), 2));
}
