#include "orbitstar/orbit.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace orbitstar {

namespace {

Monomial mono_quotient(const Monomial& m, const Monomial& d) {
    Monomial q(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) q[i] = m[i] - d[i];
    return q;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial l(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
    return l;
}

Poly shift_mono(const Poly& f, const Monomial& m, const HPoly& c) {
    Poly out(f.nvars());
    Monomial t(m.size());
    for (const auto& [mf, cf] : f.terms()) {
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = mf[i] + m[i];
        out.add_term(t, cf * c);
    }
    return out;
}

}  // namespace

Division divide(const Poly& f, const std::vector<Poly>& divisors) {
    Division out;
    out.quotients.assign(divisors.size(), Poly(f.nvars()));
    out.remainder = Poly(f.nvars());
    std::vector<const Monomial*> lts;
    std::vector<Rational> lcs;
    for (const auto& d : divisors) {
        if (d.is_zero()) throw std::invalid_argument("divide: zero divisor");
        const auto& [lm, lc] = d.leading();
        if (!lc.is_constant())
            throw std::invalid_argument("divide: divisor leading coefficient involves h");
        lts.push_back(&lm);
        lcs.push_back(lc.at_h0());
    }
    Poly work = f;
    while (!work.is_zero()) {
        const auto& [lm, lc] = work.leading();
        bool reduced = false;
        for (std::size_t j = 0; j < divisors.size(); ++j) {
            if (!mono_divides(*lts[j], lm)) continue;
            Monomial q = mono_quotient(lm, *lts[j]);
            HPoly qc = lc;
            qc /= lcs[j];
            out.quotients[j].add_term(q, qc);
            work -= shift_mono(divisors[j], q, qc);
            reduced = true;
            break;
        }
        if (!reduced) {
            out.remainder.add_term(lm, lc);
            Poly stripped(work.nvars());
            for (const auto& [m, c] : work.terms())
                if (m != lm) stripped.add_term(m, c);
            work = std::move(stripped);
        }
    }
    return out;
}

namespace {

struct TrackedPoly {
    Poly g;
    std::vector<Poly> cof;
};

// full reduction of t.g against basis, updating cofactors
void reduce_tracked(TrackedPoly& t, const std::vector<TrackedPoly>& basis) {
    std::vector<Poly> divisors;
    for (const auto& b : basis) divisors.push_back(b.g);
    if (divisors.empty()) return;
    Division d = divide(t.g, divisors);
    t.g = d.remainder;
    for (std::size_t j = 0; j < basis.size(); ++j) {
        if (d.quotients[j].is_zero()) continue;
        for (std::size_t i = 0; i < t.cof.size(); ++i)
            t.cof[i] -= d.quotients[j] * basis[j].cof[i];
    }
}

void make_monic(TrackedPoly& t) {
    const auto& lc = t.g.leading().second;
    Rational s = Rational(1) / lc.at_h0();
    t.g = t.g * s;
    for (auto& c : t.cof) c = c * s;
}

}  // namespace

std::vector<GBElement> buchberger(const std::vector<Poly>& generators) {
    if (generators.empty()) return {};
    const int n = generators.front().nvars();
    const std::size_t m = generators.size();
    std::vector<TrackedPoly> basis;
    for (std::size_t i = 0; i < m; ++i) {
        if (!generators[i].h_free())
            throw std::invalid_argument("buchberger: generators must be h-free");
        if (generators[i].is_zero()) continue;
        TrackedPoly t;
        t.g = generators[i];
        t.cof.assign(m, Poly(n));
        t.cof[i] = Poly::constant(n, Rational(1));
        make_monic(t);
        basis.push_back(std::move(t));
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);
    while (!pairs.empty()) {
        auto [i, j] = pairs.back();
        pairs.pop_back();
        const Monomial& li = basis[i].g.leading().first;
        const Monomial& lj = basis[j].g.leading().first;
        // coprime leading monomials: S-polynomial reduces to zero
        bool coprime = true;
        for (int k = 0; k < n; ++k)
            if (li[k] > 0 && lj[k] > 0) coprime = false;
        if (coprime) continue;
        Monomial l = mono_lcm(li, lj);
        TrackedPoly s;
        s.g = shift_mono(basis[i].g, mono_quotient(l, li), HPoly(Rational(1))) -
              shift_mono(basis[j].g, mono_quotient(l, lj), HPoly(Rational(1)));
        s.cof.assign(m, Poly(n));
        for (std::size_t k = 0; k < m; ++k) {
            s.cof[k] = shift_mono(basis[i].cof[k], mono_quotient(l, li), HPoly(Rational(1))) -
                       shift_mono(basis[j].cof[k], mono_quotient(l, lj), HPoly(Rational(1)));
        }
        reduce_tracked(s, basis);
        if (s.g.is_zero()) continue;
        make_monic(s);
        std::size_t idx = basis.size();
        basis.push_back(std::move(s));
        for (std::size_t k = 0; k < idx; ++k) pairs.emplace_back(k, idx);
    }
    // discard elements whose leading monomial is divisible by another's
    std::vector<bool> keep(basis.size(), true);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j || !keep[i] || !keep[j]) continue;
            if (mono_divides(basis[j].g.leading().first, basis[i].g.leading().first) &&
                (basis[j].g.leading().first != basis[i].g.leading().first || j < i))
                keep[i] = false;
        }
    std::vector<TrackedPoly> pruned;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (keep[i]) pruned.push_back(std::move(basis[i]));
    // interreduce tails for the reduced basis
    for (std::size_t i = 0; i < pruned.size(); ++i) {
        std::vector<TrackedPoly> others;
        for (std::size_t j = 0; j < pruned.size(); ++j)
            if (j != i) others.push_back(pruned[j]);
        reduce_tracked(pruned[i], others);
        make_monic(pruned[i]);
    }
    std::sort(pruned.begin(), pruned.end(), [](const TrackedPoly& a, const TrackedPoly& b) {
        return GrevlexLess()(a.g.leading().first, b.g.leading().first);
    });
    std::vector<GBElement> out;
    for (auto& t : pruned) out.push_back({std::move(t.g), std::move(t.cof)});
    return out;
}

OrbitIdeal make_orbit_ideal(const LieAlgebra& A, const std::vector<Rational>& c0) {
    if (c0.size() != A.invariants.size())
        throw std::invalid_argument("make_orbit_ideal: need one constant per invariant");
    OrbitIdeal I;
    I.algebra = A;
    I.c0 = c0;
    for (std::size_t i = 0; i < c0.size(); ++i)
        I.generators.push_back(A.invariants[i] - Poly::constant(A.n, c0[i]));
    I.groebner = buchberger(I.generators);
    return I;
}

bool OrbitIdeal::staircase_contains(const Monomial& m) const {
    for (const auto& e : groebner)
        if (mono_divides(e.g.leading().first, m)) return false;
    return true;
}

Poly normal_form(const Poly& f, const OrbitIdeal& I) {
    std::vector<Poly> divisors;
    for (const auto& e : I.groebner) divisors.push_back(e.g);
    return divide(f, divisors).remainder;
}

OrbitBasis monomial_basis(const OrbitIdeal& I, int d) {
    OrbitBasis B;
    B.by_degree.assign(d + 1, {});
    const int n = I.nvars();
    Monomial m(n, 0);
    // enumerate all monomials of degree <= d
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == n) {
            if (I.staircase_contains(m)) B.by_degree[d - left].push_back(m);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            m[pos] = e;
            self(self, pos + 1, left - e);
        }
        m[pos] = 0;
    };
    rec(rec, 0, d);
    for (auto& v : B.by_degree) std::sort(v.begin(), v.end(), GrevlexLess());
    return B;
}

IdealWitness ideal_witness(const Poly& f, const OrbitIdeal& I) {
    std::vector<Poly> divisors;
    for (const auto& e : I.groebner) divisors.push_back(e.g);
    Division d = divide(f, divisors);
    IdealWitness w;
    w.remainder = std::move(d.remainder);
    w.q.assign(I.generators.size(), Poly(f.nvars()));
    for (std::size_t j = 0; j < I.groebner.size(); ++j) {
        if (d.quotients[j].is_zero()) continue;
        for (std::size_t i = 0; i < I.generators.size(); ++i)
            w.q[i] += d.quotients[j] * I.groebner[j].cofactors[i];
    }
    return w;
}

std::vector<KostantTerm> kostant_decompose(const Poly& f, const OrbitIdeal& I) {
    const std::size_t m = I.generators.size();
    std::map<std::pair<std::vector<int>, Monomial>, HPoly> acc;
    // peel staircase part, recurse into the ideal-membership witnesses
    auto rec = [&](auto&& self, const Poly& g, const std::vector<int>& alpha,
                   int depth) -> void {
        if (g.is_zero()) return;
        if (depth > 64)
            throw std::runtime_error("kostant_decompose: basis B not spanning");
        IdealWitness w = ideal_witness(g, I);
        for (const auto& [mono, c] : w.remainder.terms()) {
            auto key = std::make_pair(alpha, mono);
            auto [it, fresh] = acc.emplace(key, c);
            if (!fresh) it->second += c;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (w.q[i].is_zero()) continue;
            std::vector<int> a = alpha;
            ++a[i];
            self(self, w.q[i], a, depth + 1);
        }
    };
    rec(rec, f, std::vector<int>(m, 0), 0);
    std::vector<KostantTerm> out;
    for (auto& [key, c] : acc)
        if (!c.is_zero()) out.push_back({key.first, key.second, c});
    return out;
}

Poly kostant_recompose(const std::vector<KostantTerm>& terms, const OrbitIdeal& I) {
    const int n = I.nvars();
    Poly out(n);
    for (const auto& t : terms) {
        Poly part = Poly::monomial(n, t.b, t.coeff);
        for (std::size_t i = 0; i < t.alpha.size(); ++i)
            for (int k = 0; k < t.alpha[i]; ++k) part *= I.generators[i];
        out += part;
    }
    return out;
}

bool groebner_self_check(const OrbitIdeal& I) {
    std::vector<Poly> divisors;
    for (const auto& e : I.groebner) divisors.push_back(e.g);
    const int n = I.nvars();
    // cofactor representations are exact
    for (const auto& e : I.groebner) {
        Poly s(n);
        for (std::size_t i = 0; i < I.generators.size(); ++i)
            s += e.cofactors[i] * I.generators[i];
        if (s != e.g) return false;
    }
    // original generators reduce to zero
    for (const auto& g : I.generators)
        if (!divide(g, divisors).remainder.is_zero()) return false;
    // all S-polynomials reduce to zero
    for (std::size_t i = 0; i < divisors.size(); ++i)
        for (std::size_t j = i + 1; j < divisors.size(); ++j) {
            const Monomial& li = divisors[i].leading().first;
            const Monomial& lj = divisors[j].leading().first;
            Monomial l = mono_lcm(li, lj);
            Poly s = shift_mono(divisors[i], mono_quotient(l, li), HPoly(Rational(1))) -
                     shift_mono(divisors[j], mono_quotient(l, lj), HPoly(Rational(1)));
            if (!divide(s, divisors).remainder.is_zero()) return false;
        }
    return true;
}

}  // namespace orbitstar
