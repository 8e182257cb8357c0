#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "orbitstar/lie.hpp"

namespace orbitstar {

// Product word in the generators, 1-based indices; empty word is the unit.
using Word = std::vector<int>;

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::size_t h = 1469598103934665603ull;
        for (int v : w) {
            h ^= static_cast<std::size_t>(v);
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Element of U_h in the ordered PBW basis: nondecreasing words with HPoly
// coefficients, no zeros stored.
class PBWElement {
public:
    using TermMap = std::map<Word, HPoly>;

    PBWElement() = default;
    static PBWElement unit() {
        PBWElement u;
        u.terms_.emplace(Word{}, HPoly(Rational(1)));
        return u;
    }
    static PBWElement basis_word(Word w, const HPoly& c = HPoly(Rational(1))) {
        PBWElement u;
        if (!c.is_zero()) u.terms_.emplace(std::move(w), c);
        return u;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // filtration degree = max word length; -1 for zero
    int degree() const {
        int d = -1;
        for (const auto& [w, c] : terms_) d = std::max<int>(d, w.size());
        return d;
    }
    HPoly coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? HPoly() : it->second;
    }

    void add_term(const Word& w, const HPoly& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(w, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    PBWElement& operator+=(const PBWElement& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    PBWElement& operator-=(const PBWElement& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, -c);
        return *this;
    }
    friend PBWElement operator+(PBWElement a, const PBWElement& b) { return a += b; }
    friend PBWElement operator-(PBWElement a, const PBWElement& b) { return a -= b; }
    PBWElement& operator*=(const HPoly& c) {
        TermMap out;
        for (const auto& [w, cc] : terms_) {
            HPoly p = cc * c;
            if (!p.is_zero()) out.emplace(w, std::move(p));
        }
        terms_ = std::move(out);
        return *this;
    }
    friend PBWElement operator*(PBWElement a, const HPoly& c) { return a *= c; }
    friend PBWElement operator*(const HPoly& c, PBWElement a) { return a *= c; }

    bool operator==(const PBWElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const PBWElement& o) const { return !(*this == o); }

    // words as "X1*X1*X3", sorted by filtration degree then lexicographically
    std::string to_string() const;

private:
    TermMap terms_;
};

// Normal-ordering context for one algebra; owns the rewrite memo table.
// Not thread-safe; use one context per thread.
class PBWContext {
public:
    explicit PBWContext(const LieAlgebra& A) : A_(A) {}

    const LieAlgebra& algebra() const { return A_; }

    // PBW-basis expansion of the product X_{i_1}...X_{i_k}
    const PBWElement& normal_order(const Word& w);
    PBWElement generator(int i) { return PBWElement::basis_word(Word{i}); }

    PBWElement mul(const PBWElement& a, const PBWElement& b);
    PBWElement commutator(const PBWElement& a, const PBWElement& b);
    // true iff u commutes with every generator
    bool center_check(const PBWElement& u);

private:
    const LieAlgebra& A_;
    std::unordered_map<Word, PBWElement, WordHash> memo_;
};

}  // namespace orbitstar
