#pragma once

#include <vector>

#include "orbitstar/lie.hpp"

namespace orbitstar {

// f = sum_j quotients[j] * divisors[j] + remainder, remainder in normal form
struct Division {
    std::vector<Poly> quotients;
    Poly remainder;
};

// Multivariate division of f by a list of divisors with rational (h-free)
// leading coefficients; coefficients of f may involve h.
Division divide(const Poly& f, const std::vector<Poly>& divisors);

// One Groebner basis element with its cofactor representation in terms of
// the original generators: g = sum_i cofactors[i] * gen_i.
struct GBElement {
    Poly g;
    std::vector<Poly> cofactors;
};

// Reduced Groebner basis under the global order, with cofactors. Generators
// must be h-free.
std::vector<GBElement> buchberger(const std::vector<Poly>& generators);

// The ideal (p_i - c_i^0) of a coadjoint orbit, with its reduced Groebner
// basis and staircase data.
struct OrbitIdeal {
    LieAlgebra algebra;
    std::vector<Rational> c0;
    std::vector<Poly> generators;   // p_i - c_i^0
    std::vector<GBElement> groebner;

    int nvars() const { return algebra.n; }
    bool staircase_contains(const Monomial& m) const;
};

OrbitIdeal make_orbit_ideal(const LieAlgebra& A, const std::vector<Rational>& c0);

// Division remainder against the Groebner basis; idempotent, and
// normal_form(f) == normal_form(g) iff f - g lies in the ideal.
Poly normal_form(const Poly& f, const OrbitIdeal& I);

// Staircase monomials of degree <= d, grouped by total degree.
struct OrbitBasis {
    std::vector<std::vector<Monomial>> by_degree;
    std::vector<Monomial> flat() const {
        std::vector<Monomial> out;
        for (const auto& v : by_degree) out.insert(out.end(), v.begin(), v.end());
        return out;
    }
};
OrbitBasis monomial_basis(const OrbitIdeal& I, int d);

// f = sum coeff * (p - c0)^alpha * b with b in the staircase basis.
struct KostantTerm {
    std::vector<int> alpha;  // exponent per invariant
    Monomial b;
    HPoly coeff;
};
std::vector<KostantTerm> kostant_decompose(const Poly& f, const OrbitIdeal& I);

// re-expand a decomposition; test/diagnostic helper
Poly kostant_recompose(const std::vector<KostantTerm>& terms, const OrbitIdeal& I);

// f = sum_i q_i * (p_i - c_i^0) + remainder with remainder = normal_form(f).
struct IdealWitness {
    std::vector<Poly> q;
    Poly remainder;
};
IdealWitness ideal_witness(const Poly& f, const OrbitIdeal& I);

// diagnostic: every S-polynomial of the Groebner basis reduces to zero and
// the cofactor representations are exact
bool groebner_self_check(const OrbitIdeal& I);

}  // namespace orbitstar
