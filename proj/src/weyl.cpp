#include "orbitstar/weyl.hpp"

#include <stdexcept>

namespace orbitstar {

// Recursion over the first letter of the averaged orderings:
//   sym(x^a) = (1/k) sum_i a_i * X_i * sym(x^(a - e_i)),  k = |a|.
const PBWElement& SymContext::sym_monomial(const Monomial& m) {
    auto it = memo_.find(m);
    if (it != memo_.end()) return it->second;
    int k = mono_degree(m);
    PBWElement out;
    if (k == 0) {
        out = PBWElement::unit();
    } else {
        for (int i = 0; i < static_cast<int>(m.size()); ++i) {
            if (m[i] == 0) continue;
            Monomial rest = m;
            --rest[i];
            PBWElement part = pbw_.mul(pbw_.generator(i + 1), sym_monomial(rest));
            part *= HPoly(Rational(m[i], k));
            out += part;
        }
    }
    return memo_.emplace(m, std::move(out)).first->second;
}

PBWElement SymContext::sym(const Poly& f) {
    if (f.nvars() != algebra().n)
        throw std::invalid_argument("sym: variable count mismatch");
    PBWElement out;
    for (const auto& [m, c] : f.terms()) {
        PBWElement s = sym_monomial(m);
        s *= c;
        out += s;
    }
    return out;
}

Poly SymContext::symbol(const PBWElement& u) const {
    const int n = algebra().n;
    Poly f(n);
    for (const auto& [w, c] : u.terms()) {
        Monomial m(n, 0);
        for (int i : w) ++m[i - 1];
        f.add_term(m, c);
    }
    return f;
}

Poly SymContext::sym_inv(const PBWElement& u) {
    const int n = algebra().n;
    Poly out(n);
    PBWElement rest = u;
    while (!rest.is_zero()) {
        int d = rest.degree();
        // top symbol: words of maximal length, as a polynomial
        Poly top(n);
        for (const auto& [w, c] : rest.terms()) {
            if (static_cast<int>(w.size()) != d) continue;
            Monomial m(n, 0);
            for (int i : w) ++m[i - 1];
            top.add_term(m, c);
        }
        out += top;
        rest -= sym(top);
        if (!rest.is_zero() && rest.degree() >= d)
            throw std::logic_error("sym_inv: filtration degree did not decrease");
    }
    return out;
}

Poly SymContext::star_s(const Poly& f, const Poly& g) {
    return sym_inv(pbw_.mul(sym(f), sym(g)));
}

Poly restrict_heisenberg_moyal(SymContext& ctx, const Poly& f, const Poly& g,
                               const Rational& c) {
    if (ctx.algebra().name != "heisenberg")
        throw std::invalid_argument("restrict_heisenberg_moyal: algebra must be heisenberg");
    if (f.depends_on(3) || g.depends_on(3))
        throw std::invalid_argument("restrict_heisenberg_moyal: inputs must not involve x3");
    return ctx.star_s(f, g).substituted(3, c);
}

}  // namespace orbitstar
