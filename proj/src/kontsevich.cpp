#include "orbitstar/kontsevich.hpp"

#include <functional>
#include <optional>
#include <set>
#include <stdexcept>

namespace orbitstar {

bool validate_poisson(const PoissonStructure& P) {
    const int n = P.n;
    if (static_cast<int>(P.alpha.size()) != n) return false;
    for (const auto& row : P.alpha)
        if (static_cast<int>(row.size()) != n) return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!P.alpha[i][j].h_free()) return false;
            if (P.alpha[i][j] != -P.alpha[j][i]) return false;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Poly acc(n);
                for (int l = 0; l < n; ++l) {
                    acc += P.alpha[i][l] * P.alpha[j][k].partial(l + 1);
                    acc += P.alpha[j][l] * P.alpha[k][i].partial(l + 1);
                    acc += P.alpha[k][l] * P.alpha[i][j].partial(l + 1);
                }
                if (!acc.is_zero()) return false;
            }
    return true;
}

PoissonStructure from_lie(const LieAlgebra& A) {
    PoissonStructure P;
    P.n = A.n;
    P.alpha.assign(A.n, std::vector<Poly>(A.n, Poly(A.n)));
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j)
            for (int k = 0; k < A.n; ++k)
                if (A.c[i][j][k] != 0)
                    P.alpha[i][j] += Poly::variable(A.n, k + 1) * A.c[i][j][k];
    return P;
}

namespace {

Poly b1(const Poly& f, const Poly& g, const PoissonStructure& P) {
    Poly acc(P.n);
    for (int i = 0; i < P.n; ++i)
        for (int j = 0; j < P.n; ++j)
            if (!P.alpha[i][j].is_zero())
                acc += P.alpha[i][j] * f.partial(i + 1) * g.partial(j + 1);
    return acc * Rational(1, 2);
}

Poly b2(const Poly& f, const Poly& g, const PoissonStructure& P, const Order2Weights& W) {
    Poly acc(P.n);
    for (int i = 0; i < P.n; ++i)
        for (int j = 0; j < P.n; ++j) {
            if (P.alpha[i][j].is_zero()) continue;
            for (int k = 0; k < P.n; ++k)
                for (int l = 0; l < P.n; ++l) {
                    if (W.w_sym2 != 0 && !P.alpha[k][l].is_zero())
                        acc += P.alpha[i][j] * P.alpha[k][l] *
                               f.partial(i + 1).partial(k + 1) *
                               g.partial(j + 1).partial(l + 1) * W.w_sym2;
                    if (W.w_loop != 0) {
                        Poly dalpha = P.alpha[k][l].partial(j + 1);
                        if (dalpha.is_zero()) continue;
                        Poly mixed = f.partial(i + 1).partial(k + 1) * g.partial(l + 1) -
                                     f.partial(k + 1) * g.partial(i + 1).partial(l + 1);
                        acc += P.alpha[i][j] * dalpha * mixed * W.w_loop;
                    }
                }
        }
    return acc;
}

}  // namespace

Poly star_k2(const Poly& f, const Poly& g, const PoissonStructure& P,
             const Order2Weights& W) {
    Poly out = f * g + b1(f, g, P).mul_h(1) + b2(f, g, P, W).mul_h(2);
    return out.h_truncated(2);
}

Order2Weights solve_order2_weights(const std::vector<PoissonStructure>& test_set) {
    // the h^2 associativity defect is affine in the weights; evaluate it at
    // three weight points to extract the linear system
    struct Eq {
        Rational a, b, rhs;
    };
    std::optional<Eq> pivot_a, pivot_b;  // pivot_a has a != 0; pivot_b has a == 0, b != 0
    auto feed = [&](Eq e) {
        if (pivot_a && e.a != 0) {
            Rational k = e.a / pivot_a->a;
            e.a = 0;
            e.b -= k * pivot_a->b;
            e.rhs -= k * pivot_a->rhs;
        }
        if (pivot_b && e.b != 0 && (e.a == 0 || !pivot_a)) {
            Rational k = e.b / pivot_b->b;
            e.b = 0;
            e.rhs -= k * pivot_b->rhs;
        }
        if (e.a != 0)
            pivot_a = e;
        else if (e.b != 0)
            pivot_b = e;
        else if (e.rhs != 0)
            throw std::runtime_error("order-2 weight system inconsistent");
    };

    for (const PoissonStructure& P : test_set) {
        if (!validate_poisson(P))
            throw std::invalid_argument("solve_order2_weights: invalid Poisson structure");
        std::vector<Monomial> monos;
        Monomial m(P.n, 0);
        std::function<void(int, int)> rec = [&](int pos, int left) {
            if (pos == P.n) {
                monos.push_back(m);
                return;
            }
            for (int e = 0; e <= left; ++e) {
                m[pos] = e;
                rec(pos + 1, left - e);
            }
            m[pos] = 0;
        };
        rec(0, 2);

        const Order2Weights W00{Rational(0), Rational(0)};
        const Order2Weights W10{Rational(1), Rational(0)};
        const Order2Weights W01{Rational(0), Rational(1)};
        auto defect2 = [&](const Poly& f, const Poly& g, const Poly& k,
                           const Order2Weights& W) {
            Poly d = star_k2(star_k2(f, g, P, W), k, P, W) -
                     star_k2(f, star_k2(g, k, P, W), P, W);
            return d.h_coefficient(2);
        };
        for (const Monomial& mf : monos)
            for (const Monomial& mg : monos)
                for (const Monomial& mk : monos) {
                    Poly f = Poly::monomial(P.n, mf, HPoly(Rational(1)));
                    Poly g = Poly::monomial(P.n, mg, HPoly(Rational(1)));
                    Poly k = Poly::monomial(P.n, mk, HPoly(Rational(1)));
                    Poly d00 = defect2(f, g, k, W00);
                    Poly da = defect2(f, g, k, W10) - d00;
                    Poly db = defect2(f, g, k, W01) - d00;
                    if (da.is_zero() && db.is_zero() && d00.is_zero()) continue;
                    std::set<Monomial, GrevlexLess> support;
                    for (const auto& [mm, c] : da.terms()) support.insert(mm);
                    for (const auto& [mm, c] : db.terms()) support.insert(mm);
                    for (const auto& [mm, c] : d00.terms()) support.insert(mm);
                    for (const Monomial& mu : support)
                        feed(Eq{da.coeff(mu).coeff(0), db.coeff(mu).coeff(0),
                                -d00.coeff(mu).coeff(0)});
                }
    }
    if (!pivot_a || !pivot_b)
        throw std::runtime_error("order-2 weight system underdetermined");
    Rational w_loop = pivot_b->rhs / pivot_b->b;
    Rational w_sym2 = (pivot_a->rhs - pivot_a->b * w_loop) / pivot_a->a;
    return Order2Weights{w_sym2, w_loop};
}

}  // namespace orbitstar
