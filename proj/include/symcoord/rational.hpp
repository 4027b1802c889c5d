#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace symcoord {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial of negative integer");
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline Int binomial(const Int& n, int k) {
    if (k < 0) return 0;
    Int b = 1;
    for (int i = 0; i < k; ++i) {
        b *= n - i;
        b /= i + 1;
    }
    return b;
}

// N(N-1)...(N-k+1)
inline Int falling_factorial(const Int& n, int k) {
    Int f = 1;
    for (int i = 0; i < k; ++i) f *= n - i;
    return f;
}

inline std::string to_string(const Rational& q) {
    return q.str();
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Int(s));
    return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

}  // namespace symcoord
