#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <string>

namespace orbitstar {

// Exact rational scalar. boost keeps values reduced with positive denominator.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string rat_to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

inline Rational rat(long num, long den = 1) { return Rational(num, den); }

}  // namespace orbitstar
