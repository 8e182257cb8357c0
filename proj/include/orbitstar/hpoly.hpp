#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "orbitstar/rational.hpp"

namespace orbitstar {

// Polynomial in the central formal parameter h with rational coefficients.
// Stored densely by h-power, trailing zeros stripped; the zero polynomial
// has an empty coefficient vector.
class HPoly {
public:
    HPoly() = default;
    explicit HPoly(const Rational& c) {
        if (c != 0) c_.push_back(c);
    }
    HPoly(const Rational& c, int hpow) {
        if (c != 0) {
            c_.assign(hpow + 1, Rational(0));
            c_[hpow] = c;
        }
    }
    static HPoly h(int k = 1) { return HPoly(Rational(1), k); }

    bool is_zero() const { return c_.empty(); }
    // degree in h; -1 for the zero polynomial
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Rational coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
        return c_[k];
    }
    Rational at_h0() const { return coeff(0); }
    bool is_constant() const { return c_.size() <= 1; }

    HPoly& operator+=(const HPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    HPoly& operator-=(const HPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend HPoly operator+(HPoly a, const HPoly& b) { return a += b; }
    friend HPoly operator-(HPoly a, const HPoly& b) { return a -= b; }
    friend HPoly operator-(const HPoly& a) {
        HPoly r;
        r.c_.reserve(a.c_.size());
        for (const auto& c : a.c_) r.c_.push_back(-c);
        return r;
    }
    friend HPoly operator*(const HPoly& a, const HPoly& b) {
        HPoly r;
        if (a.is_zero() || b.is_zero()) return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] += a.c_[i] * b.c_[j];
        r.trim();
        return r;
    }
    HPoly& operator*=(const HPoly& o) { return *this = *this * o; }
    HPoly& operator*=(const Rational& s) {
        if (s == 0) {
            c_.clear();
            return *this;
        }
        for (auto& c : c_) c *= s;
        return *this;
    }
    friend HPoly operator*(HPoly a, const Rational& s) { return a *= s; }
    friend HPoly operator*(const Rational& s, HPoly a) { return a *= s; }
    HPoly& operator/=(const Rational& s) {
        if (s == 0) throw std::domain_error("HPoly: division by zero");
        for (auto& c : c_) c /= s;
        return *this;
    }

    // multiply by h^k
    HPoly shifted(int k) const {
        HPoly r;
        if (is_zero()) return r;
        r.c_.assign(c_.size() + k, Rational(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i + k] = c_[i];
        return r;
    }
    // exact division by h^k; throws if a lower-order coefficient is nonzero
    HPoly divided_by_h(int k) const {
        HPoly r;
        if (is_zero()) return r;
        for (int i = 0; i < k && i < static_cast<int>(c_.size()); ++i)
            if (c_[i] != 0) throw std::domain_error("HPoly: not divisible by h^k");
        if (static_cast<int>(c_.size()) <= k) return r;
        r.c_.assign(c_.begin() + k, c_.end());
        return r;
    }
    HPoly truncated(int max_order) const {
        HPoly r = *this;
        if (static_cast<int>(r.c_.size()) > max_order + 1) r.c_.resize(max_order + 1);
        r.trim();
        return r;
    }
    HPoly eval_h(const Rational& v) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * v + *it;
        return HPoly(acc).is_zero() ? HPoly() : HPoly(acc);
    }

    bool operator==(const HPoly& o) const { return c_ == o.c_; }
    bool operator!=(const HPoly& o) const { return c_ != o.c_; }

    // "3/2", "h", "-h^2", "1 + 2*h" style; constants with no h printed bare
    std::string to_string() const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

inline std::string HPoly::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    bool first = true;
    for (int k = 0; k <= degree(); ++k) {
        Rational c = coeff(k);
        if (c == 0) continue;
        std::string piece;
        Rational a = c < 0 ? Rational(-c) : c;
        if (k == 0) {
            piece = rat_to_string(a);
        } else {
            std::string hp = k == 1 ? "h" : "h^" + std::to_string(k);
            piece = (a == 1) ? hp : rat_to_string(a) + "*" + hp;
        }
        if (first) {
            s = (c < 0 ? "-" : "") + piece;
            first = false;
        } else {
            s += (c < 0 ? " - " : " + ") + piece;
        }
    }
    return s;
}

}  // namespace orbitstar
