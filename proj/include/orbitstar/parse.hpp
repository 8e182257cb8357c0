#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "orbitstar/poly.hpp"

namespace orbitstar {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " (at byte " + std::to_string(offset) + ")"),
          offset(offset) {}
    std::size_t offset;
};

// Parse an expression over rationals, `h`, variables x1..xn (plus optional
// aliases, one per variable), operators + - * / ^ and parentheses into an
// exact Poly. `/` requires a nonzero constant divisor; `^` a nonnegative
// integer literal exponent.
Poly parse_expr(const std::string& text, int nvars,
                const std::vector<std::string>& aliases = {});

}  // namespace orbitstar
