#include "orbitstar/parse.hpp"

#include <cctype>

namespace orbitstar {

namespace {

class Parser {
public:
    Parser(const std::string& s, int nvars, const std::vector<std::string>& aliases)
        : s_(s), n_(nvars), aliases_(aliases) {}

    Poly parse() {
        Poly p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly expr() {
        Poly p = term();
        for (;;) {
            if (accept('+'))
                p += term();
            else if (accept('-'))
                p -= term();
            else
                return p;
        }
    }

    Poly term() {
        Poly p = factor();
        for (;;) {
            skip_ws();
            if (accept('*')) {
                p *= factor();
            } else if (accept('/')) {
                std::size_t at = pos_;
                Poly d = factor();
                if (d.degree() > 0 || d.h_degree() > 0) {
                    pos_ = at;
                    fail("divisor must be a rational constant");
                }
                Rational v = d.is_zero() ? Rational(0) : d.terms().begin()->second.at_h0();
                if (v == 0) {
                    pos_ = at;
                    fail("division by zero");
                }
                p *= HPoly(Rational(1) / v);
            } else if (pos_ < s_.size() &&
                       (std::isalpha(static_cast<unsigned char>(s_[pos_])) ||
                        s_[pos_] == '(')) {
                // implicit multiplication: "2x", "h x1", "3(x+1)"
                p *= factor();
            } else {
                return p;
            }
        }
    }

    Poly factor() {
        if (accept('-')) return -factor();
        if (accept('+')) return factor();
        Poly a = atom();
        skip_ws();
        if (accept('^')) {
            int e = exponent();
            Poly r = Poly::constant(n_, Rational(1));
            for (int i = 0; i < e; ++i) r *= a;
            return r;
        }
        return a;
    }

    int exponent() {
        skip_ws();
        bool paren = accept('(');
        skip_ws();
        bool neg = accept('-');
        skip_ws();
        std::size_t at = pos_;
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected integer exponent");
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            v = v * 10 + (s_[pos_++] - '0');
        if (neg) {
            pos_ = at;
            fail("negative exponent");
        }
        if (paren && !accept(')')) fail("expected ')'");
        return static_cast<int>(v);
    }

    Poly atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                v = v * 10 + (s_[pos_++] - '0');
            return Poly::constant(n_, Rational(v));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t at = pos_;
            std::string id;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                id += s_[pos_++];
            if (id == "h") {
                Poly p = Poly::constant(n_, HPoly::h());
                return p;
            }
            if (id.size() >= 2 && id[0] == 'x') {
                bool digits = true;
                for (std::size_t i = 1; i < id.size(); ++i)
                    if (!std::isdigit(static_cast<unsigned char>(id[i]))) digits = false;
                if (digits) {
                    int idx = std::stoi(id.substr(1));
                    if (idx < 1 || idx > n_) {
                        pos_ = at;
                        fail("unknown variable '" + id + "'");
                    }
                    return Poly::variable(n_, idx);
                }
            }
            for (std::size_t i = 0; i < aliases_.size(); ++i)
                if (aliases_[i] == id) return Poly::variable(n_, static_cast<int>(i) + 1);
            pos_ = at;
            fail("unknown variable '" + id + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    int n_;
    const std::vector<std::string>& aliases_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_expr(const std::string& text, int nvars,
                const std::vector<std::string>& aliases) {
    return Parser(text, nvars, aliases).parse();
}

}  // namespace orbitstar
