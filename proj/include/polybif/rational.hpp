#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <string>

namespace polybif {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_gcd(Int a, Int b) {
    using boost::multiprecision::gcd;
    Int g = gcd(a, b);
    return g < 0 ? Int(-g) : g;
}

// gcd of rationals: gcd of numerators over lcm of denominators, always >= 0
inline Rat rat_gcd(const Rat& a, const Rat& b) {
    using boost::multiprecision::lcm;
    if (a == 0) return b < 0 ? Rat(-b) : b;
    if (b == 0) return a < 0 ? Rat(-a) : a;
    Int gn = int_gcd(numerator(a), numerator(b));
    Int gl = lcm(denominator(a), denominator(b));
    return Rat(gn, gl);
}

inline double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

inline std::complex<double> rat_to_complex(const Rat& r) {
    return {rat_to_double(r), 0.0};
}

// canonical "p" or "p/q" form used everywhere rationals are serialized
inline std::string rat_to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace polybif
