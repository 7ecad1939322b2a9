#pragma once

#include "integer.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace k3fib {

class SL2 {
public:
    SL2() : a_(1), b_(0), c_(0), d_(1) {}
    SL2(Int a, Int b, Int c, Int d) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d))
    {
        if (a_ * d_ - b_ * c_ != 1)
            throw Error(ErrorKind::invalid_argument, "matrix determinant is not 1");
    }

    static SL2 identity() { return SL2(); }

    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& c() const { return c_; }
    const Int& d() const { return d_; }

    Int trace() const { return a_ + d_; }

    SL2 inverse() const { return SL2(d_, -b_, -c_, a_, unchecked{}); }
    SL2 operator-() const { return SL2(-a_, -b_, -c_, -d_, unchecked{}); }
    SL2 transpose() const { return SL2(a_, c_, b_, d_, unchecked{}); }

    friend SL2 operator*(const SL2& x, const SL2& y)
    {
        return SL2(x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_,
                   x.c_ * y.a_ + x.d_ * y.c_, x.c_ * y.b_ + x.d_ * y.d_, unchecked{});
    }

    friend bool operator==(const SL2& x, const SL2& y)
    {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
    }
    friend bool operator!=(const SL2& x, const SL2& y) { return !(x == y); }

    // exact power, negative exponents allowed
    SL2 pow(long long k) const
    {
        SL2 base = k < 0 ? inverse() : *this;
        unsigned long long e = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1 : static_cast<unsigned long long>(k);
        SL2 out;
        while (e) {
            if (e & 1) out = out * base;
            base = base * base;
            e >>= 1;
        }
        return out;
    }

    bool is_identity() const { return *this == SL2(); }

    std::string str() const
    {
        return "(" + a_.str() + "," + b_.str() + ";" + c_.str() + "," + d_.str() + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const SL2& m) { return os << m.str(); }

private:
    struct unchecked {};
    SL2(Int a, Int b, Int c, Int d, unchecked) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

    Int a_, b_, c_, d_;
};

inline SL2 mat_R() { return SL2(1, 1, 0, 1); }
inline SL2 mat_L() { return SL2(1, 0, 1, 1); }
inline SL2 mat_S() { return SL2(0, -1, 1, 0); }
inline SL2 mat_T(const Int& k) { return SL2(1, k, 0, 1); }

// M(n) = (n-1,-1;1,0); A_{p,q,r} = M(r) M(q) M(p)
inline SL2 monodromy_factor(int n) { return SL2(n - 1, -1, 1, 0); }

inline SL2 monodromy_matrix(int p, int q, int r)
{
    if (p < 2 || q < 2 || r < 2)
        throw Error(ErrorKind::invalid_argument, "monodromy_matrix: p, q, r must be >= 2");
    return monodromy_factor(r) * monodromy_factor(q) * monodromy_factor(p);
}

enum class ConjClass { identity, minus_identity, elliptic, parabolic, hyperbolic };

inline const char* to_string(ConjClass c)
{
    switch (c) {
    case ConjClass::identity: return "identity";
    case ConjClass::minus_identity: return "minus_identity";
    case ConjClass::elliptic: return "elliptic";
    case ConjClass::parabolic: return "parabolic";
    case ConjClass::hyperbolic: return "hyperbolic";
    }
    return "?";
}

inline ConjClass classify(const SL2& m)
{
    if (m.is_identity()) return ConjClass::identity;
    if ((-m).is_identity()) return ConjClass::minus_identity;
    Int t = abs(m.trace());
    if (t > 2) return ConjClass::hyperbolic;
    if (t == 2) return ConjClass::parabolic;
    return ConjClass::elliptic;
}

// floor((u + s*sqrt(D)) / v) for non-square D > 0, s = +-1, v != 0
inline Int floor_quadratic(const Int& u, int s, const Int& D, const Int& v)
{
    Int r = isqrt(D);
    // u + s*sqrt(D) lies strictly between n0 and n0 + 1
    Int n0 = s > 0 ? Int(u + r) : Int(u - r - 1);
    if (v > 0) return floor_div(n0, v);
    return floor_div(-n0 - 1, -v);
}

// Cyclic exponent word R^{a1} L^{b1} ... R^{ak} L^{bk}, all exponents >= 1.
struct RLWord {
    std::vector<std::pair<Int, Int>> blocks;
    bool negated = false; // true when the word factors -M

    std::string str() const
    {
        std::string s = negated ? "-" : "";
        for (auto& [r, l] : blocks)
            s += "R^" + r.str() + " L^" + l.str() + " ";
        if (!s.empty() && s.back() == ' ') s.pop_back();
        return s;
    }
};

struct ConjugacyCertificate {
    SL2 conjugator; // P with P * M * P^{-1} = N
    SL2 source;
    SL2 target;

    bool verify() const { return conjugator * source * conjugator.inverse() == target; }
};

namespace detail {

struct PositiveForm {
    SL2 reduced;   // nonnegative entries, equal to P * M * P^{-1}
    SL2 conj;      // P
    std::string letters;
};

// hyperbolic, trace > 2
inline PositiveForm positive_form(const SL2& m)
{
    SL2 cur = m;
    SL2 P;
    const Int t = m.trace();
    const Int D = t * t - 4;
    for (int guard = 0;; ++guard) {
        if (guard > 100000)
            throw Error(ErrorKind::internal, "positive_form did not terminate");
        // attracting fixed point xi = (a-d+sqrt D)/(2c), repelling eta = (a-d-sqrt D)/(2c)
        Int u = cur.a() - cur.d();
        Int v = 2 * cur.c();
        Int fx = floor_quadratic(u, 1, D, v);
        Int fe = floor_quadratic(u, -1, D, v);
        if (fe < fx) {
            SL2 sh = mat_T(-fx);
            cur = sh * cur * sh.inverse();
            P = sh * P;
            break;
        }
        if (fx < fe) {
            SL2 sh = mat_S() * mat_T(-fe);
            cur = sh * cur * sh.inverse();
            P = sh * P;
            break;
        }
        SL2 sh = mat_S() * mat_T(-fx);
        cur = sh * cur * sh.inverse();
        P = sh * P;
    }
    if (cur.a() < 0 || cur.b() < 0 || cur.c() < 0 || cur.d() < 0)
        throw Error(ErrorKind::internal, "positive_form produced a matrix with negative entries");
    return {cur, P, {}};
}

inline std::vector<std::pair<char, Int>> factor_positive(SL2 m)
{
    // greedy peeling of R / L from the left
    std::vector<std::pair<char, Int>> runs;
    while (!m.is_identity()) {
        if (m.a() >= m.c() && m.b() >= m.d()) {
            // number of R's: largest k with row1 - k*row2 >= 0
            Int k = m.c() == 0 ? Int(m.b() / m.d()) : Int(m.a() / m.c());
            if (m.d() != 0) k = std::min(k, Int(m.b() / m.d()));
            if (k < 1) k = 1;
            m = SL2(m.a() - k * m.c(), m.b() - k * m.d(), m.c(), m.d());
            if (!runs.empty() && runs.back().first == 'R') runs.back().second += k;
            else runs.emplace_back('R', k);
        } else if (m.c() >= m.a() && m.d() >= m.b()) {
            Int k = m.a() == 0 ? Int(m.d() / m.b()) : Int(m.c() / m.a());
            if (m.b() != 0) k = std::min(k, Int(m.d() / m.b()));
            if (k < 1) k = 1;
            m = SL2(m.a(), m.b(), m.c() - k * m.a(), m.d() - k * m.b());
            if (!runs.empty() && runs.back().first == 'L') runs.back().second += k;
            else runs.emplace_back('L', k);
        } else {
            throw Error(ErrorKind::internal, "factor_positive: matrix is not a positive word");
        }
    }
    return runs;
}

} // namespace detail

struct RLFactorization {
    RLWord word;
    SL2 conjugator; // P with P * M * P^{-1} = (+-) product of the word as written
};

inline RLFactorization rl_factorization(const SL2& m)
{
    if (classify(m) != ConjClass::hyperbolic)
        throw Error(ErrorKind::invalid_argument, "rl_word: matrix is not hyperbolic");
    bool neg = m.trace() < 0;
    SL2 base = neg ? -m : m;
    auto pf = detail::positive_form(base);
    auto runs = detail::factor_positive(pf.reduced);
    // rotate so the word starts with an R-run; both letters occur for hyperbolics
    SL2 P = pf.conj;
    if (runs.front().first == 'L') {
        // move the leading L-run to the end: W = L^k V  ->  V L^k = L^{-k} W L^k
        SL2 lk = SL2(1, 0, runs.front().second, 1);
        P = lk.inverse() * P;
        auto front = runs.front();
        runs.erase(runs.begin());
        if (!runs.empty() && runs.back().first == 'L') runs.back().second += front.second;
        else runs.push_back(front);
    }
    if (runs.size() % 2 != 0) {
        // starts and ends with R: merge trailing R into the head
        SL2 rk = SL2(1, runs.back().second, 0, 1);
        P = rk * P;
        runs.front().second += runs.back().second;
        runs.pop_back();
    }
    RLFactorization out;
    out.word.negated = neg;
    for (std::size_t i = 0; i < runs.size(); i += 2)
        out.word.blocks.emplace_back(runs[i].second, runs[i + 1].second);
    out.conjugator = P;
    return out;
}

inline RLWord rl_word(const SL2& m) { return rl_factorization(m).word; }

inline SL2 evaluate_rl(const RLWord& w)
{
    SL2 out;
    for (auto& [r, l] : w.blocks)
        out = out * SL2(1, r, 0, 1) * SL2(1, 0, l, 1);
    return w.negated ? -out : out;
}

// rotation index k (in blocks) with rotate(a, k) == b, if any
inline std::optional<std::size_t> cyclic_match(const RLWord& a, const RLWord& b)
{
    if (a.negated != b.negated || a.blocks.size() != b.blocks.size())
        return std::nullopt;
    const std::size_t n = a.blocks.size();
    for (std::size_t k = 0; k < n; ++k) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            ok = a.blocks[(i + k) % n] == b.blocks[i];
        if (ok) return k;
    }
    return std::nullopt;
}

namespace detail {

inline std::optional<ConjugacyCertificate> conj_hyperbolic(const SL2& m, const SL2& n)
{
    auto fm = rl_factorization(m);
    auto fn = rl_factorization(n);
    auto k = cyclic_match(fm.word, fn.word);
    if (!k) return std::nullopt;
    // W_M = U V, W_N = V U with U the first k blocks of W_M
    SL2 U;
    for (std::size_t i = 0; i < *k; ++i)
        U = U * SL2(1, fm.word.blocks[i].first, 0, 1) * SL2(1, 0, fm.word.blocks[i].second, 1);
    SL2 P = fn.conjugator.inverse() * U.inverse() * fm.conjugator;
    return ConjugacyCertificate{P, m, n};
}

struct ParabolicForm {
    int eps;
    Int k;
    SL2 Q; // Q^{-1} M Q = eps * (1,k;0,1)
};

inline ParabolicForm parabolic_form(const SL2& m)
{
    int eps = m.trace() > 0 ? 1 : -1;
    Int r1 = m.a() - eps, r2 = m.b();
    if (r1 == 0 && r2 == 0) {
        r1 = m.c();
        r2 = m.d() - eps;
    }
    Int g = gcd(r1, r2);
    Int v1 = -r2 / g, v2 = r1 / g;
    Int x, y;
    ext_gcd(v1, v2, x, y); // v1*x + v2*y = 1
    // w with v1*w2 - v2*w1 = 1: w = (-y, x)
    SL2 Q(v1, -y, v2, x);
    SL2 nf = Q.inverse() * m * Q;
    if (nf.c() != 0 || nf.a() != eps || nf.d() != eps)
        throw Error(ErrorKind::internal, "parabolic normal form failed");
    return {eps, eps * nf.b(), Q};
}

inline std::optional<ConjugacyCertificate> conj_parabolic(const SL2& m, const SL2& n)
{
    auto a = parabolic_form(m);
    auto b = parabolic_form(n);
    if (a.eps != b.eps || a.k != b.k) return std::nullopt;
    SL2 P = b.Q * a.Q.inverse();
    return ConjugacyCertificate{P, m, n};
}

// fixed point of an elliptic matrix moved into the standard fundamental domain
inline std::pair<SL2, SL2> elliptic_reduce(const SL2& m)
{
    SL2 cur = m, P;
    for (int guard = 0; guard < 10000; ++guard) {
        // Re(tau) = (a-d)/(2c); translate to [-1/2, 1/2]
        Int num = cur.a() - cur.d(), den = 2 * cur.c();
        if (den < 0) {
            num = -num;
            den = -den;
        }
        Int k = floor_div(2 * num + den, 2 * den);
        if (k != 0) {
            SL2 sh = mat_T(-k);
            cur = sh * cur * sh.inverse();
            P = sh * P;
        }
        // |tau|^2 = -b/c
        if (abs(cur.b()) < abs(cur.c())) {
            cur = mat_S() * cur * mat_S().inverse();
            P = mat_S() * P;
            continue;
        }
        return {cur, P};
    }
    throw Error(ErrorKind::internal, "elliptic reduction did not terminate");
}

inline std::optional<ConjugacyCertificate> conj_elliptic(const SL2& m, const SL2& n)
{
    auto [rm, pm] = elliptic_reduce(m);
    auto [rn, pn] = elliptic_reduce(n);
    constexpr int B = 3;
    for (int a = -B; a <= B; ++a)
        for (int b = -B; b <= B; ++b)
            for (int c = -B; c <= B; ++c)
                for (int d = -B; d <= B; ++d) {
                    if (a * d - b * c != 1) continue;
                    SL2 Q(a, b, c, d);
                    if (Q * rm == rn * Q) {
                        SL2 P = pn.inverse() * Q * pm;
                        return ConjugacyCertificate{P, m, n};
                    }
                }
    return std::nullopt;
}

} // namespace detail

inline std::optional<ConjugacyCertificate> is_conjugate(const SL2& m, const SL2& n)
{
    if (m == n) return ConjugacyCertificate{SL2(), m, n};
    if (m.trace() != n.trace()) return std::nullopt;
    ConjClass cm = classify(m), cn = classify(n);
    if (cm != cn) return std::nullopt;
    std::optional<ConjugacyCertificate> out;
    switch (cm) {
    case ConjClass::identity:
    case ConjClass::minus_identity: return std::nullopt;
    case ConjClass::hyperbolic: out = detail::conj_hyperbolic(m, n); break;
    case ConjClass::parabolic: out = detail::conj_parabolic(m, n); break;
    case ConjClass::elliptic: out = detail::conj_elliptic(m, n); break;
    }
    if (out && !out->verify())
        throw Error(ErrorKind::internal, "conjugacy certificate failed re-verification");
    return out;
}

inline std::optional<ConjugacyCertificate> is_conjugate_to_inverse(const SL2& m, const SL2& n)
{
    return is_conjugate(m, n.inverse());
}

// test oracle only: exhaustive search over conjugators with entries in [-bound, bound]
inline std::optional<SL2> brute_force_conjugator(const SL2& m, const SL2& n, int bound)
{
    for (int a = -bound; a <= bound; ++a)
        for (int b = -bound; b <= bound; ++b)
            for (int c = -bound; c <= bound; ++c)
                for (int d = -bound; d <= bound; ++d) {
                    if (static_cast<long long>(a) * d - static_cast<long long>(b) * c != 1) continue;
                    SL2 P(a, b, c, d);
                    if (P * m == n * P) return P;
                }
    return std::nullopt;
}

// ---- Dehn twists on H_1(T^2) ----

struct HomologyClass {
    Int m, n;

    HomologyClass(Int m_, Int n_) : m(std::move(m_)), n(std::move(n_))
    {
        if (m == 0 && n == 0)
            throw Error(ErrorKind::invalid_argument, "homology class (0,0)");
        if (gcd(m, n) != 1)
            throw Error(ErrorKind::invalid_argument, "homology class is not primitive");
    }

    friend bool operator==(const HomologyClass& x, const HomologyClass& y) { return x.m == y.m && x.n == y.n; }
};

inline HomologyClass class_alpha() { return {1, 0}; }
inline HomologyClass class_beta() { return {0, 1}; }
inline HomologyClass class_gamma() { return {1, -1}; }

// <x, y> = x1 y2 - x2 y1
inline Int intersection(const Int& x1, const Int& x2, const Int& y1, const Int& y2) { return x1 * y2 - x2 * y1; }

// v -> v + <v,c> c
inline SL2 dehn_twist(const HomologyClass& c)
{
    return SL2(1 + c.m * c.n, -c.m * c.m, c.n * c.n, 1 - c.m * c.n);
}

struct TwistLetter {
    HomologyClass cls;
    long long exp;
};

using TwistWord = std::vector<TwistLetter>;

// leftmost letter applied last
inline SL2 evaluate_word(const TwistWord& w)
{
    SL2 out;
    for (auto& l : w)
        out = out * dehn_twist(l.cls).pow(l.exp);
    return out;
}

} // namespace k3fib
