#include "orbitstar/poly.hpp"

namespace orbitstar {

std::string mono_to_string(const Monomial& m, const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += "*";
        std::string v = i < names.size() ? names[i] : "x" + std::to_string(i + 1);
        s += v;
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
}

namespace {

// true if the h-polynomial is a single monomial in h (one nonzero coefficient)
bool single_h_term(const HPoly& c, int& k, Rational& v) {
    int found = -1;
    for (int i = 0; i <= c.degree(); ++i)
        if (c.coeff(i) != 0) {
            if (found >= 0) return false;
            found = i;
        }
    if (found < 0) return false;
    k = found;
    v = c.coeff(found);
    return true;
}

}  // namespace

std::string Poly::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string s;
    // leading term first (descending global order)
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string mono = mono_to_string(m, names);
        int k = 0;
        Rational v;
        std::string piece;
        bool negative = false;
        if (single_h_term(c, k, v)) {
            negative = v < 0;
            Rational a = negative ? Rational(-v) : v;
            std::string hp = k == 0 ? "" : (k == 1 ? "h" : "h^" + std::to_string(k));
            piece = (a == 1 && !(hp.empty() && mono.empty())) ? "" : rat_to_string(a);
            for (const std::string& f : {hp, mono})
                if (!f.empty()) piece += (piece.empty() ? "" : "*") + f;
        } else {
            piece = "(" + c.to_string() + ")";
            if (!mono.empty()) piece += "*" + mono;
        }
        if (s.empty())
            s = (negative ? "-" : "") + piece;
        else
            s += (negative ? " - " : " + ") + piece;
    }
    return s;
}

}  // namespace orbitstar
