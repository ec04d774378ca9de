#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <string>

#include "errors.hpp"

namespace filtra {

// Exact coefficient arithmetic. cpp_rational keeps the canonical form this
// library relies on: numerator/denominator coprime, denominator positive.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0)
        throw DivisionByZero("rational with zero denominator");
    return Rational(num, den);
}

inline std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

} // namespace filtra
