#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace k3fib {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class ErrorKind { invalid_argument, precondition, not_unimodular, definite, convergence, internal };

class Error : public std::runtime_error {
public:
    Error(ErrorKind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline Int floor_div(const Int& a, const Int& b)
{
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

inline Int gcd(Int a, Int b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// returns g = gcd(a,b) >= 0 and x, y with a*x + b*y = g
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y)
{
    Int r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int tmp = r0 - q * r1; r0 = r1; r1 = tmp;
        tmp = s0 - q * s1; s0 = s1; s1 = tmp;
        tmp = t0 - q * t1; t0 = t1; t1 = tmp;
    }
    if (r0 < 0) {
        r0 = -r0; s0 = -s0; t0 = -t0;
    }
    x = s0;
    y = t0;
    return r0;
}

// floor(sqrt(n)) for n >= 0
inline Int isqrt(const Int& n)
{
    if (n < 0)
        throw Error(ErrorKind::invalid_argument, "isqrt of negative number");
    return boost::multiprecision::sqrt(n);
}

inline Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline int sign(const Int& a) { return a < 0 ? -1 : (a > 0 ? 1 : 0); }

inline bool fits_int64(const Int& a)
{
    return a >= Int(INT64_MIN) && a <= Int(INT64_MAX);
}

inline std::string to_string(const Int& a) { return a.str(); }

} // namespace k3fib
