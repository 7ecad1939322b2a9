#pragma once

#include "integer.hpp"

#include <cmath>
#include <string>

namespace k3fib {

// Squarefree part by trial division; the radicands met here are small.
inline void split_square(const Int& n, Int& square_root_part, Int& squarefree)
{
    if (n <= 0) throw Error(ErrorKind::invalid_argument, "split_square needs n > 0");
    Int rest = n, f = 1;
    for (Int p = 2; p * p <= rest && p <= 1000000; ++p) {
        while (rest % (p * p) == 0) {
            rest /= p * p;
            f *= p;
        }
    }
    Int r = isqrt(rest);
    if (r * r == rest && rest > 1) {
        f *= r;
        rest = 1;
    }
    square_root_part = f;
    squarefree = rest;
}

// (a + b sqrt(d)) / c with d squarefree, c > 0, gcd(a,b,c) = 1
class QuadIrrational {
public:
    QuadIrrational() : a_(0), b_(0), c_(1), d_(1) {}
    QuadIrrational(Int a, Int b, Int c, Int d) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d))
    {
        if (c_ == 0) throw Error(ErrorKind::invalid_argument, "QuadIrrational: zero denominator");
        if (d_ <= 0) throw Error(ErrorKind::invalid_argument, "QuadIrrational: radicand must be positive");
        Int f, sf;
        split_square(d_, f, sf);
        b_ *= f;
        d_ = sf;
        if (d_ == 1) {
            a_ += b_;
            b_ = 0;
        }
        normalise();
    }

    static QuadIrrational integer(const Int& n, const Int& d) { return QuadIrrational(n, 0, 1, d); }

    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& c() const { return c_; }
    const Int& d() const { return d_; }

    QuadIrrational conj() const { return make(a_, -b_, c_, d_); }

    friend QuadIrrational operator+(const QuadIrrational& x, const QuadIrrational& y)
    {
        Int d = field(x, y);
        return make(x.a_ * y.c_ + y.a_ * x.c_, x.b_ * y.c_ + y.b_ * x.c_, x.c_ * y.c_, d);
    }
    friend QuadIrrational operator-(const QuadIrrational& x, const QuadIrrational& y) { return x + (-y); }
    QuadIrrational operator-() const { return make(-a_, -b_, c_, d_); }

    friend QuadIrrational operator*(const QuadIrrational& x, const QuadIrrational& y)
    {
        Int d = field(x, y);
        return make(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, x.c_ * y.c_, d);
    }

    QuadIrrational inverse() const
    {
        // 1/x = c (a - b sqrt d) / (a^2 - b^2 d)
        Int den = a_ * a_ - b_ * b_ * d_;
        if (den == 0) throw Error(ErrorKind::invalid_argument, "QuadIrrational: division by zero");
        return make(c_ * a_, -c_ * b_, den, d_);
    }

    friend QuadIrrational operator/(const QuadIrrational& x, const QuadIrrational& y) { return x * y.inverse(); }

    friend bool operator==(const QuadIrrational& x, const QuadIrrational& y)
    {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && (x.b_ == 0 || x.d_ == y.d_);
    }
    friend bool operator!=(const QuadIrrational& x, const QuadIrrational& y) { return !(x == y); }

    bool is_rational() const { return b_ == 0; }

    // trace and norm over Q as rationals
    Rational trace() const { return Rational(2 * a_, c_); }
    Rational norm() const { return Rational(a_ * a_ - b_ * b_ * d_, c_ * c_); }

    // sign of a + b sqrt(d)
    int sign() const
    {
        int sa = k3fib::sign(a_), sb = k3fib::sign(b_);
        if (sb == 0) return sa;
        if (sa == 0 || sa == sb) return sa == 0 ? sb : sa;
        // opposite signs: compare a^2 with b^2 d
        Int lhs = a_ * a_, rhs = b_ * b_ * d_;
        if (lhs == rhs) return 0;
        return lhs > rhs ? sa : sb;
    }

    friend bool operator<(const QuadIrrational& x, const QuadIrrational& y) { return (x - y).sign() < 0; }
    friend bool operator>(const QuadIrrational& x, const QuadIrrational& y) { return y < x; }

    double to_double() const
    {
        return (a_.convert_to<double>() + b_.convert_to<double>() * std::sqrt(d_.convert_to<double>())) / c_.convert_to<double>();
    }

    // "2+sqrt(3)", "(3+sqrt(3))/2", "(3+2*sqrt(5))/3"
    std::string str() const
    {
        std::string s;
        if (b_ == 0) {
            s = a_.str();
        } else {
            if (a_ != 0) s = a_.str();
            Int bb = abs(b_);
            if (b_ < 0) s += "-";
            else if (a_ != 0) s += "+";
            if (bb != 1) s += bb.str() + "*";
            s += "sqrt(" + d_.str() + ")";
        }
        if (c_ == 1) return s;
        bool compound = (a_ != 0 && b_ != 0) || (a_ == 0 && b_ < 0) || (b_ == 0 && a_ < 0);
        return (compound ? "(" + s + ")" : s) + "/" + c_.str();
    }

private:
    struct raw {};
    QuadIrrational(Int a, Int b, Int c, Int d, raw) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) { normalise(); }

    static QuadIrrational make(Int a, Int b, Int c, Int d) { return QuadIrrational(std::move(a), std::move(b), std::move(c), std::move(d), raw{}); }

    static Int field(const QuadIrrational& x, const QuadIrrational& y)
    {
        if (x.b_ != 0 && y.b_ != 0 && x.d_ != y.d_)
            throw Error(ErrorKind::invalid_argument, "QuadIrrational: mixed quadratic fields");
        return x.b_ != 0 ? x.d_ : y.d_;
    }

    void normalise()
    {
        if (c_ < 0) {
            a_ = -a_;
            b_ = -b_;
            c_ = -c_;
        }
        Int g = gcd(gcd(a_, b_), c_);
        if (g > 1) {
            a_ /= g;
            b_ /= g;
            c_ /= g;
        }
    }

    Int a_, b_, c_, d_;
};

} // namespace k3fib
