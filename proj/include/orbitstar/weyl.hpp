#pragma once

#include <map>

#include "orbitstar/pbw.hpp"

namespace orbitstar {

// Symmetrizer (Weyl map) and the induced star product on polynomials.
// Holds a per-multidegree memo; one context per thread, like PBWContext.
class SymContext {
public:
    explicit SymContext(PBWContext& pbw) : pbw_(pbw) {}

    PBWContext& pbw() { return pbw_; }
    const LieAlgebra& algebra() const { return pbw_.algebra(); }

    // sym(x^a1..x^ak) = 1/k! sum over orderings, extended HPoly-linearly
    PBWElement sym(const Poly& f);
    // unique preimage under sym, by descending filtration degree
    Poly sym_inv(const PBWElement& u);
    // f *_S g = sym_inv(sym(f) sym(g))
    Poly star_s(const Poly& f, const Poly& g);

    // the commutative symbol: each word X_{i_1}...X_{i_k} -> x_{i_1}...x_{i_k}
    Poly symbol(const PBWElement& u) const;

private:
    const PBWElement& sym_monomial(const Monomial& m);
    PBWContext& pbw_;
    std::map<Monomial, PBWElement> memo_;
};

// Heisenberg-only: star_s(f,g) with x3 substituted by c. f,g must not
// involve x3. The result matches the Moyal product with parameter h*c.
Poly restrict_heisenberg_moyal(SymContext& ctx, const Poly& f, const Poly& g,
                               const Rational& c);

}  // namespace orbitstar
