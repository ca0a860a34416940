#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace covering {

// All densities and bounds are exact; cpp_rational keeps values in lowest
// terms with a positive denominator.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const Int& num, const Int& den) {
    return Rational(num, den);
}

inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace covering
