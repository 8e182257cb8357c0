#pragma once

#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitstar/hpoly.hpp"

namespace orbitstar {

// Exponent multi-index of fixed length n.
using Monomial = std::vector<int>;

inline int mono_degree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), 0);
}
inline bool mono_divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

// Global term order: graded reverse lexicographic with x1 < x2 < ... < xn.
// Ties between monomials of equal degree go to the one with the smaller
// exponent on the lowest-index variable, so e.g. x3^2 > x2^2 > x1^2 and the
// leading monomial of x1^2+x2^2+x3^2 is x3^2.
struct GrevlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = mono_degree(a), db = mono_degree(b);
        if (da != db) return da < db;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i];
        return false;
    }
};

// Multivariate polynomial in x1..xn over HPoly coefficients.
// No zero coefficients are stored; equality is structural.
class Poly {
public:
    using TermMap = std::map<Monomial, HPoly, GrevlexLess>;

    Poly() : n_(0) {}
    explicit Poly(int nvars) : n_(nvars) {}

    static Poly constant(int nvars, const HPoly& c) {
        Poly p(nvars);
        if (!c.is_zero()) p.terms_.emplace(Monomial(nvars, 0), c);
        return p;
    }
    static Poly constant(int nvars, const Rational& c) {
        return constant(nvars, HPoly(c));
    }
    // 1-based variable index
    static Poly variable(int nvars, int i) {
        check_index(nvars, i);
        Poly p(nvars);
        Monomial m(nvars, 0);
        m[i - 1] = 1;
        p.terms_.emplace(std::move(m), HPoly(Rational(1)));
        return p;
    }
    static Poly monomial(int nvars, const Monomial& m, const HPoly& c) {
        Poly p(nvars);
        if (!c.is_zero()) p.terms_.emplace(m, c);
        return p;
    }

    int nvars() const { return n_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const {  // -1 for zero
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
        return d;
    }
    int h_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, c.degree());
        return d;
    }
    HPoly coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? HPoly() : it->second;
    }
    // leading term under the global order
    const std::pair<const Monomial, HPoly>& leading() const {
        if (terms_.empty()) throw std::logic_error("Poly: leading of zero");
        return *terms_.rbegin();
    }

    void add_term(const Monomial& m, const HPoly& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        check_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a) {
        Poly r(a.n_);
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_same(b);
        Poly r(a.n_);
        Monomial m(a.n_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                for (int i = 0; i < a.n_; ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly& operator*=(const HPoly& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        TermMap out;
        for (const auto& [m, cc] : terms_) {
            HPoly p = cc * c;
            if (!p.is_zero()) out.emplace(m, std::move(p));
        }
        terms_ = std::move(out);
        return *this;
    }
    friend Poly operator*(Poly a, const HPoly& c) { return a *= c; }
    friend Poly operator*(const HPoly& c, Poly a) { return a *= c; }
    friend Poly operator*(Poly a, const Rational& c) { return a *= HPoly(c); }
    friend Poly operator*(const Rational& c, Poly a) { return a *= HPoly(c); }

    bool operator==(const Poly& o) const { return n_ == o.n_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // formal partial derivative with respect to x_i (1-based); h is constant
    Poly partial(int i) const {
        check_index(n_, i);
        Poly r(n_);
        for (const auto& [m, c] : terms_) {
            if (m[i - 1] == 0) continue;
            Monomial d = m;
            --d[i - 1];
            r.add_term(d, c * Rational(m[i - 1]));
        }
        return r;
    }

    // coefficient of h^k as a polynomial with constant-in-h coefficients
    Poly h_coefficient(int k) const {
        Poly r(n_);
        for (const auto& [m, c] : terms_) {
            Rational v = c.coeff(k);
            if (v != 0) r.terms_.emplace(m, HPoly(v));
        }
        return r;
    }
    // smallest k with nonzero h^k coefficient; -1 for zero
    int h_order() const {
        int best = -1;
        for (const auto& [m, c] : terms_)
            for (int k = 0; k <= c.degree(); ++k)
                if (c.coeff(k) != 0) {
                    if (best < 0 || k < best) best = k;
                    break;
                }
        return best;
    }
    Poly h_truncated(int max_order) const {
        Poly r(n_);
        for (const auto& [m, c] : terms_) r.add_term(m, c.truncated(max_order));
        return r;
    }
    Poly mul_h(int k) const {
        Poly r(n_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, c.shifted(k));
        return r;
    }

    // substitute x_i := value
    Poly substituted(int i, const Rational& value) const {
        check_index(n_, i);
        Poly r(n_);
        for (const auto& [m, c] : terms_) {
            Rational scale(1);
            for (int k = 0; k < m[i - 1]; ++k) scale *= value;
            Monomial d = m;
            d[i - 1] = 0;
            r.add_term(d, c * scale);
        }
        return r;
    }
    // substitute every variable, leaving a polynomial in h
    HPoly evaluated(const std::vector<Rational>& point) const {
        if (static_cast<int>(point.size()) != n_)
            throw std::invalid_argument("Poly: evaluation point dimension mismatch");
        HPoly acc;
        for (const auto& [m, c] : terms_) {
            Rational scale(1);
            for (int i = 0; i < n_; ++i)
                for (int k = 0; k < m[i]; ++k) scale *= point[i];
            acc += c * scale;
        }
        return acc;
    }

    bool depends_on(int i) const {
        check_index(n_, i);
        for (const auto& [m, c] : terms_)
            if (m[i - 1] > 0) return true;
        return false;
    }
    bool h_free() const {
        for (const auto& [m, c] : terms_)
            if (!c.is_constant()) return false;
        return true;
    }

    std::string to_string(const std::vector<std::string>& names = {}) const;

private:
    static void check_index(int n, int i) {
        if (i < 1 || i > n) throw std::invalid_argument("Poly: variable index out of range");
    }
    void check_same(const Poly& o) const {
        if (n_ != o.n_) throw std::invalid_argument("Poly: variable count mismatch");
    }
    int n_;
    TermMap terms_;
};

std::string mono_to_string(const Monomial& m, const std::vector<std::string>& names);

}  // namespace orbitstar
