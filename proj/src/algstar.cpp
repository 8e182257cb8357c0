#include "orbitstar/algstar.hpp"

#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace orbitstar {

QuantizationData::QuantizationData(OrbitIdeal ideal, std::vector<HPoly> c_h)
    : ideal_(std::move(ideal)), c_h_(std::move(c_h)) {
    const std::size_t m = ideal_.c0.size();
    if (c_h_.empty())
        for (const Rational& c : ideal_.c0) c_h_.emplace_back(c);
    if (c_h_.size() != m)
        throw std::invalid_argument("QuantizationData: need one c_i(h) per invariant");
    for (std::size_t i = 0; i < m; ++i) {
        if (c_h_[i].coeff(0) != ideal_.c0[i])
            throw std::invalid_argument("QuantizationData: c_i(0) != c_i^0");
        HPoly tail = c_h_[i] - HPoly(ideal_.c0[i]);
        delta_.push_back(tail.divided_by_h(1));
    }
    pbw_ = std::make_unique<PBWContext>(ideal_.algebra);
    sym_ = std::make_unique<SymContext>(*pbw_);
    for (const Poly& p : ideal_.algebra.invariants) P_.push_back(sym_->sym(p));
}

namespace {

Word word_of(const Monomial& m) {
    Word w;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (int k = 0; k < m[i]; ++k) w.push_back(static_cast<int>(i) + 1);
    return w;
}

Monomial monomial_of(const Word& w, int nvars) {
    Monomial m(nvars, 0);
    for (int v : w) ++m[v - 1];
    return m;
}

}  // namespace

PBWElement psi(const Poly& f, QuantizationData& Q) {
    PBWElement out;
    for (const KostantTerm& t : kostant_decompose(f, Q.ideal())) {
        PBWElement e = Q.pbw().normal_order(word_of(t.b));
        for (std::size_t i = 0; i < t.alpha.size(); ++i) {
            PBWElement factor = Q.invariant_image(i);
            factor -= PBWElement::unit() * Q.c_h()[i];
            for (int k = 0; k < t.alpha[i]; ++k) e = Q.pbw().mul(factor, e);
        }
        out += e * t.coeff;
    }
    return out;
}

Poly psi_inv(const PBWElement& u, QuantizationData& Q) {
    const int n = Q.ideal().nvars();
    Poly f(n);
    PBWElement rest = u;
    while (!rest.is_zero()) {
        const int d = rest.degree();
        Poly top(n);
        for (const auto& [w, c] : rest.terms())
            if (static_cast<int>(w.size()) == d) top.add_term(monomial_of(w, n), c);
        f += top;
        rest -= psi(top, Q);
        if (!rest.is_zero() && rest.degree() >= d)
            throw std::logic_error("psi_inv: filtration degree did not decrease");
    }
    return f;
}

Poly star_p(const Poly& f, const Poly& g, QuantizationData& Q) {
    return psi_inv(Q.pbw().mul(psi(f, Q), psi(g, Q)), Q);
}

Poly star_p_orbit(const Poly& f, const Poly& g, QuantizationData& Q) {
    if (f != normal_form(f, Q.ideal()) || g != normal_form(g, Q.ideal()))
        throw std::invalid_argument("star_p_orbit: inputs must be in normal form");
    return normal_form(star_p(f, g, Q), Q.ideal());
}

Poly eta(const Poly& f, QuantizationData& Q) { return Q.sym().sym_inv(psi(f, Q)); }

TangentialityReport tangentiality_check(const StarHandle& star, const OrbitIdeal& I,
                                        const std::vector<Poly>& sample) {
    TangentialityReport report;
    for (const Poly& g : I.generators)
        for (const Poly& f : sample)
            for (const Poly& prod : {star(g, f), star(f, g)}) {
                Poly r = normal_form(prod, I);
                if (!r.is_zero()) {
                    report.pass = false;
                    report.generator = g;
                    report.sample = f;
                    report.residue = r;
                    return report;
                }
            }
    return report;
}

DeltaResult compute_delta(const QuantizationData& Q, const GeneratorShift& shift) {
    const std::size_t m = Q.ideal().c0.size();
    if (shift.z.size() != m)
        throw std::invalid_argument("compute_delta: need one z_i per invariant");
    const int nv = static_cast<int>(m);
    std::vector<Poly> divisors;
    for (std::size_t j = 0; j < m; ++j)
        divisors.push_back(Poly::variable(nv, static_cast<int>(j) + 1) -
                           Poly::constant(nv, Q.ideal().c0[j]));

    DeltaResult out;
    for (std::size_t i = 0; i < m; ++i) {
        HPoly d = shift.z[i].evaluated(Q.ideal().c0);
        Division div = divide(shift.z[i] - Poly::constant(nv, d), divisors);
        if (!div.remainder.is_zero())
            throw std::logic_error("compute_delta: factorization remainder nonzero");
        out.delta.push_back(std::move(d));
        out.b.push_back(std::move(div.quotients));
    }

    // det(delta_ij + h b_ij) by cofactor expansion; m is small
    std::vector<std::vector<Poly>> mat(m, std::vector<Poly>(m, Poly(nv)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            mat[i][j] = out.b[i][j].mul_h(1);
            if (i == j) mat[i][j] += Poly::constant(nv, Rational(1));
        }
    std::function<Poly(const std::vector<std::vector<Poly>>&)> det =
        [&](const std::vector<std::vector<Poly>>& a) -> Poly {
        const std::size_t k = a.size();
        if (k == 1) return a[0][0];
        Poly acc(nv);
        for (std::size_t col = 0; col < k; ++col) {
            std::vector<std::vector<Poly>> minor;
            for (std::size_t r = 1; r < k; ++r) {
                std::vector<Poly> row;
                for (std::size_t c = 0; c < k; ++c)
                    if (c != col) row.push_back(a[r][c]);
                minor.push_back(std::move(row));
            }
            Poly term = a[0][col] * det(minor);
            acc += (col % 2 == 0) ? term : -term;
        }
        return acc;
    };
    out.det_unit_at_h0 = det(mat).h_coefficient(0) == Poly::constant(nv, Rational(1));

    out.matches_claimed = shift.claimed_delta.empty() || shift.claimed_delta == out.delta;
    return out;
}

Poly LinearOp::apply(const Poly& f) const {
    Poly out(f.nvars());
    for (const auto& [m, c] : f.terms()) {
        auto it = columns.find(m);
        if (it == columns.end()) continue;
        for (const auto& [m2, c2] : it->second.terms()) out.add_term(m2, c2 * c);
    }
    return out;
}

Poly EquivalenceResult::apply(const Poly& f) const {
    Poly out = f;
    for (std::size_t n = 0; n < T.size(); ++n)
        out += T[n].apply(f).mul_h(static_cast<int>(n) + 1);
    return out;
}

namespace {

void enumerate_monomials(int nvars, int maxdeg, std::vector<Monomial>& out) {
    Monomial m(nvars, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == nvars) {
            out.push_back(m);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            m[pos] = e;
            rec(pos + 1, left - e);
        }
        m[pos] = 0;
    };
    rec(0, maxdeg);
}

// One pivoted row in x_p = rhs - sum a_q x_q form; invariant: a mentions
// only unknowns that are not pivots.
struct PivotRow {
    std::map<long, Rational> a;
    Rational rhs;
};

class SparseSolver {
public:
    // returns false on an inconsistent equation sum coeffs = rhs
    bool add(std::map<long, Rational> eq, Rational rhs) {
        std::vector<std::pair<long, Rational>> subst;
        for (const auto& [q, c] : eq)
            if (pivots_.count(q)) subst.emplace_back(q, c);
        for (const auto& [q, c] : subst) {
            const PivotRow& row = pivots_.at(q);
            eq.erase(q);
            rhs -= c * row.rhs;
            for (const auto& [t, a] : row.a) add_coeff(eq, t, -c * a);
        }
        if (eq.empty()) return rhs == 0;

        const long p = eq.begin()->first;
        const Rational lead = eq.begin()->second;
        PivotRow row;
        row.rhs = rhs / lead;
        for (auto it = std::next(eq.begin()); it != eq.end(); ++it)
            row.a.emplace(it->first, it->second / lead);
        for (const auto& [t, a] : row.a) occ_[t].insert(p);
        // keep stored rows free of the new pivot
        auto users = occ_.find(p);
        if (users != occ_.end()) {
            for (long s : std::set<long>(users->second)) {
                PivotRow& S = pivots_.at(s);
                Rational k = S.a.at(p);
                S.a.erase(p);
                S.rhs -= k * row.rhs;
                for (const auto& [t, a] : row.a) {
                    auto before = S.a.count(t);
                    add_coeff(S.a, t, -k * a);
                    auto after = S.a.count(t);
                    if (!before && after) occ_[t].insert(s);
                    if (before && !after) occ_[t].erase(s);
                }
            }
            occ_.erase(p);
        }
        pivots_.emplace(p, std::move(row));
        return true;
    }

    // with free unknowns set to zero, each pivot value is just its rhs
    const std::unordered_map<long, PivotRow>& pivots() const { return pivots_; }

private:
    static void add_coeff(std::map<long, Rational>& m, long k, const Rational& v) {
        auto [it, fresh] = m.emplace(k, v);
        if (!fresh) {
            it->second += v;
            if (it->second == 0) m.erase(it);
        }
    }
    std::unordered_map<long, PivotRow> pivots_;
    std::unordered_map<long, std::set<long>> occ_;
};

}  // namespace

EquivalenceResult equivalence_solver(const StarHandle& star_a, const StarHandle& star_b,
                                     int nvars, int d, int r) {
    EquivalenceResult res;
    std::vector<Monomial> basis, domain, targets;
    enumerate_monomials(nvars, d, basis);
    enumerate_monomials(nvars, 2 * d, domain);
    enumerate_monomials(nvars, 3 * d, targets);
    std::map<Monomial, long, GrevlexLess> dom_idx;
    for (std::size_t i = 0; i < domain.size(); ++i) dom_idx.emplace(domain[i], i);
    const long N = static_cast<long>(domain.size());
    auto unknown = [&](const Monomial& in, const Monomial& out) -> long {
        return dom_idx.at(in) * N + dom_idx.at(out);
    };
    auto in_domain = [&](const Monomial& m) { return dom_idx.count(m) != 0; };

    auto mono_poly = [&](const Monomial& m) {
        return Poly::monomial(nvars, m, HPoly(Rational(1)));
    };
    std::vector<std::string> names;
    for (int i = 1; i <= nvars; ++i) names.push_back("x" + std::to_string(i));
    // products of basis monomials under *_A, fixed across orders
    std::vector<std::vector<Poly>> prod_a;
    for (const Monomial& f : basis) {
        std::vector<Poly> row;
        for (const Monomial& g : basis) row.push_back(star_a(mono_poly(f), mono_poly(g)));
        prod_a.push_back(std::move(row));
    }

    auto apply_partial = [&](const Poly& f) {
        Poly out = f;
        for (std::size_t n = 0; n < res.T.size(); ++n)
            out += res.T[n].apply(f).mul_h(static_cast<int>(n) + 1);
        return out;
    };

    for (int n = 1; n <= r; ++n) {
        SparseSolver solver;
        for (std::size_t fi = 0; fi < basis.size(); ++fi)
            for (std::size_t gi = 0; gi < basis.size(); ++gi) {
                const Monomial &f = basis[fi], &g = basis[gi];
                Poly defect = apply_partial(prod_a[fi][gi]) -
                              star_b(apply_partial(mono_poly(f)), apply_partial(mono_poly(g)));
                Poly rhs_poly = -defect.h_coefficient(n);
                Monomial fg(nvars, 0);
                for (int i = 0; i < nvars; ++i) fg[i] = f[i] + g[i];
                for (const Monomial& mu : targets) {
                    std::map<long, Rational> eq;
                    auto divides = [&](const Monomial& a, Monomial& quot) {
                        for (int i = 0; i < nvars; ++i) {
                            quot[i] = mu[i] - a[i];
                            if (quot[i] < 0) return false;
                        }
                        return true;
                    };
                    Monomial quot(nvars, 0);
                    if (in_domain(mu)) eq.emplace(unknown(fg, mu), Rational(1));
                    if (divides(g, quot) && in_domain(quot))
                        eq[unknown(f, quot)] -= 1;
                    if (divides(f, quot) && in_domain(quot))
                        eq[unknown(g, quot)] -= 1;
                    for (auto it = eq.begin(); it != eq.end();)
                        it = (it->second == 0) ? eq.erase(it) : std::next(it);
                    HPoly c = rhs_poly.coeff(mu);
                    Rational rhs = c.coeff(0);
                    if (eq.empty() && rhs == 0) continue;
                    if (!solver.add(std::move(eq), rhs)) {
                        res.fail_order = n;
                        std::ostringstream os;
                        os << "not equivalent at order " << n << ": inconsistent at pair ("
                           << mono_to_string(f, names) << ", " << mono_to_string(g, names)
                           << "), target " << mono_to_string(mu, names);
                        res.message = os.str();
                        return res;
                    }
                }
            }
        LinearOp Tn;
        for (const auto& [id, row] : solver.pivots()) {
            if (row.rhs == 0) continue;
            const Monomial& in = domain[id / N];
            const Monomial& out = domain[id % N];
            auto [it, fresh] = Tn.columns.emplace(in, Poly(nvars));
            it->second.add_term(out, HPoly(row.rhs));
        }
        res.T.push_back(std::move(Tn));
    }

    // exact residual check of the solved gauge transformation
    for (std::size_t fi = 0; fi < basis.size(); ++fi)
        for (std::size_t gi = 0; gi < basis.size(); ++gi) {
            Poly lhs = res.apply(prod_a[fi][gi]);
            Poly rhs = star_b(res.apply(mono_poly(basis[fi])), res.apply(mono_poly(basis[gi])));
            if (!(lhs - rhs).h_truncated(r).is_zero()) {
                res.fail_order = r;
                res.message = "solver produced a transformation with nonzero residual";
                return res;
            }
        }
    res.success = true;
    return res;
}

}  // namespace orbitstar
