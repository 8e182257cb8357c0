#include <doctest.h>

#include <random>

#include "orbitstar/pbw.hpp"
#include "test_util.hpp"

using namespace orbitstar;

namespace {

PBWElement random_element(std::mt19937_64& rng, PBWContext& ctx, int maxdeg,
                          int nterms = 4) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> len(0, maxdeg);
    std::uniform_int_distribution<int> gen(1, ctx.algebra().n);
    PBWElement u;
    for (int t = 0; t < nterms; ++t) {
        Word w;
        int l = len(rng);
        for (int i = 0; i < l; ++i) w.push_back(gen(rng));
        std::sort(w.begin(), w.end());
        int c = coeff(rng);
        if (c != 0) u.add_term(w, HPoly(Rational(c)));
    }
    return u;
}

PBWElement casimir_su2(PBWContext& ctx) {
    PBWElement p;
    for (int i = 1; i <= 3; ++i) p += PBWElement::basis_word(Word{i, i});
    return p;
}

}  // namespace

TEST_CASE("normal_order single rewrites") {
    LieAlgebra su2 = catalog_algebra("su2");
    PBWContext ctx(su2);
    // X2 X1 = X1 X2 - h X3
    PBWElement e = ctx.normal_order(Word{2, 1});
    CHECK(e.coeff(Word{1, 2}) == HPoly(Rational(1)));
    CHECK(e.coeff(Word{3}) == HPoly(Rational(-1), 1));
    CHECK(e.terms().size() == 2);

    LieAlgebra heis = catalog_algebra("heisenberg");
    PBWContext hctx(heis);
    PBWElement f = hctx.normal_order(Word{2, 1});
    CHECK(f.coeff(Word{1, 2}) == HPoly(Rational(1)));
    CHECK(f.coeff(Word{3}) == HPoly(Rational(-1), 1));

    // sorted words are fixed
    CHECK(ctx.normal_order(Word{1, 2, 3}) == PBWElement::basis_word(Word{1, 2, 3}));
    CHECK(ctx.normal_order(Word{}) == PBWElement::unit());
    CHECK_THROWS_AS(ctx.normal_order(Word{4}), std::invalid_argument);
}

TEST_CASE("pbw_mul basics and defining relations") {
    LieAlgebra su2 = catalog_algebra("su2");
    PBWContext ctx(su2);
    std::mt19937_64 rng(1);
    PBWElement u = random_element(rng, ctx, 3);
    CHECK(ctx.mul(PBWElement::unit(), u) == u);
    CHECK(ctx.mul(u, PBWElement::unit()) == u);

    PBWElement x1 = ctx.generator(1), x2 = ctx.generator(2);
    CHECK(ctx.mul(x1, x2) == PBWElement::basis_word(Word{1, 2}));
    PBWElement diff = ctx.mul(x1, x2) - ctx.mul(x2, x1);
    CHECK(diff.coeff(Word{3}) == HPoly(Rational(1), 1));
    CHECK(diff.terms().size() == 1);
}

TEST_CASE("commutator of generators reproduces h-scaled brackets") {
    for (const char* name : {"heisenberg", "su2", "su3"}) {
        LieAlgebra A = catalog_algebra(name);
        PBWContext ctx(A);
        for (int i = 1; i <= A.n; ++i)
            for (int j = 1; j <= A.n; ++j) {
                PBWElement c = ctx.commutator(ctx.generator(i), ctx.generator(j));
                PBWElement expect;
                for (int k = 1; k <= A.n; ++k) {
                    Rational v = A.structure(i, j, k);
                    if (v != 0) expect.add_term(Word{k}, HPoly(v, 1));
                }
                CHECK(c == expect);
            }
    }
}

TEST_CASE("su2 Casimir is central") {
    LieAlgebra su2 = catalog_algebra("su2");
    PBWContext ctx(su2);
    PBWElement P = casimir_su2(ctx);
    CHECK(ctx.center_check(P));
    CHECK(ctx.mul(P, ctx.generator(1)) == ctx.mul(ctx.generator(1), P));
    std::mt19937_64 rng(testutil::default_seed() + 20);
    for (int it = 0; it < 20; ++it) {
        PBWElement u = random_element(rng, ctx, 3);
        CHECK(ctx.commutator(P, u).is_zero());
    }
}

TEST_CASE("center_check basics") {
    LieAlgebra su2 = catalog_algebra("su2");
    PBWContext ctx(su2);
    CHECK(ctx.center_check(PBWElement::unit()));
    CHECK_FALSE(ctx.center_check(ctx.generator(1)));
    CHECK(ctx.commutator(ctx.generator(1), PBWElement::unit()).is_zero());
}

TEST_CASE("associativity on random triples") {
    std::mt19937_64 rng(testutil::default_seed() + 21);
    for (const char* name : {"heisenberg", "su2", "su3"}) {
        LieAlgebra A = catalog_algebra(name);
        PBWContext ctx(A);
        for (int it = 0; it < 25; ++it) {
            PBWElement a = random_element(rng, ctx, 3);
            PBWElement b = random_element(rng, ctx, 3);
            PBWElement c = random_element(rng, ctx, 3);
            CHECK(ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c)));
        }
    }
}

TEST_CASE("filtration and symbol-map properties") {
    std::mt19937_64 rng(testutil::default_seed() + 22);
    LieAlgebra su2 = catalog_algebra("su2");
    PBWContext ctx(su2);
    for (int it = 0; it < 20; ++it) {
        PBWElement a = random_element(rng, ctx, 3);
        PBWElement b = random_element(rng, ctx, 3);
        PBWElement ab = ctx.mul(a, b);
        if (a.is_zero() || b.is_zero()) continue;
        CHECK(ab.degree() <= a.degree() + b.degree());
        // h-degree bound: every rewrite inserts one h, at most (k choose 2) steps
        int k = a.degree() + b.degree();
        for (const auto& [w, c] : ab.terms()) CHECK(c.degree() <= k * (k - 1) / 2);
        // top symbol at h^0 is the commutative product of top symbols
        Poly ta(3), tb(3), tab(3);
        auto top = [](const PBWElement& u, int d) {
            Poly t(3);
            for (const auto& [w, c] : u.terms())
                if (static_cast<int>(w.size()) == d && c.coeff(0) != 0) {
                    Monomial m(3, 0);
                    for (int i : w) ++m[i - 1];
                    t.add_term(m, HPoly(c.coeff(0)));
                }
            return t;
        };
        if (ab.degree() == a.degree() + b.degree()) {
            Poly prod = top(a, a.degree()) * top(b, b.degree());
            CHECK(top(ab, ab.degree()) == prod);
        }
    }
}

TEST_CASE("normal ordering of already-sorted word has unit coefficient") {
    LieAlgebra su3 = catalog_algebra("su3");
    PBWContext ctx(su3);
    Word w{3, 1, 5, 2, 8, 4};
    PBWElement e = ctx.normal_order(w);
    Word sorted = w;
    std::sort(sorted.begin(), sorted.end());
    CHECK(e.coeff(sorted).coeff(0) == Rational(1));
    for (const auto& [word, c] : e.terms()) {
        CHECK(std::is_sorted(word.begin(), word.end()));
        if (word != sorted) CHECK(c.coeff(0) == Rational(0));
    }
}
