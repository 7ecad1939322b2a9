#pragma once

#include "matrix.hpp"

#include <string>
#include <tuple>
#include <vector>

namespace k3fib {

struct GramLattice {
    IntMatrix gram;
    std::vector<std::string> labels;

    GramLattice() = default;
    GramLattice(IntMatrix g, std::vector<std::string> l) : gram(std::move(g)), labels(std::move(l))
    {
        if (!gram.is_symmetric())
            throw Error(ErrorKind::invalid_argument, "Gram matrix is not symmetric");
        if (labels.size() != gram.rows())
            throw Error(ErrorKind::invalid_argument, "label count does not match rank");
    }

    std::size_t rank() const { return gram.rows(); }

    friend bool operator==(const GramLattice& x, const GramLattice& y) { return x.gram == y.gram && x.labels == y.labels; }
};

struct Signature {
    std::size_t pos = 0, zero = 0, neg = 0;
    friend bool operator==(const Signature& a, const Signature& b)
    {
        return a.pos == b.pos && a.zero == b.zero && a.neg == b.neg;
    }
};

enum class Parity { even, odd };

inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

// +2 diagonal, -1 between neighbours
inline GramLattice a_block(std::size_t n)
{
    if (n < 1) throw Error(ErrorKind::invalid_argument, "a_block: n must be >= 1");
    IntMatrix g(n, n);
    std::vector<std::string> lab;
    for (std::size_t i = 0; i < n; ++i) {
        g(i, i) = 2;
        if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = -1;
        lab.push_back("a" + std::to_string(i + 1));
    }
    return {g, lab};
}

inline GramLattice hyperbolic_plane()
{
    return {IntMatrix{{0, 1}, {1, 0}}, {"e", "f"}};
}

inline GramLattice direct_sum(const GramLattice& x, const GramLattice& y)
{
    const std::size_t n = x.rank(), m = y.rank();
    IntMatrix g(n + m, n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = x.gram(i, j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = y.gram(i, j);
    auto lab = x.labels;
    lab.insert(lab.end(), y.labels.begin(), y.labels.end());
    return {g, lab};
}

inline GramLattice direct_sum(const std::vector<GramLattice>& parts)
{
    GramLattice out;
    for (auto& p : parts) out = direct_sum(out, p);
    return out;
}

inline GramLattice scaled(const GramLattice& l, int s)
{
    IntMatrix g = l.gram;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= s;
    return {g, l.labels};
}

inline std::string sigma_label(int arm, int j) { return "Sigma_" + std::to_string(arm) + "," + std::to_string(j); }

// Star diagram with arms of p-1, q-1, r-1 spheres meeting the central sphere Sigma+.
// Basis: Sigma_{1,1..p-1}, Sigma_{2,1..q-1}, Sigma_{3,1..r-1}, Sigma+.
inline GramLattice t_lattice(int p, int q, int r)
{
    if (p < 2 || q < 2 || r < 2)
        throw Error(ErrorKind::invalid_argument, "t_lattice: p, q, r must be >= 2");
    const int arms[3] = {p - 1, q - 1, r - 1};
    const std::size_t n = static_cast<std::size_t>(p + q + r - 2);
    IntMatrix g(n, n);
    std::vector<std::string> lab;
    std::size_t idx = 0;
    const std::size_t centre = n - 1;
    for (int m = 0; m < 3; ++m) {
        for (int j = 1; j <= arms[m]; ++j, ++idx) {
            g(idx, idx) = -2;
            if (j == 1) g(idx, centre) = g(centre, idx) = 1;
            if (j < arms[m]) g(idx, idx + 1) = g(idx + 1, idx) = 1;
            lab.push_back(sigma_label(m + 1, j));
        }
    }
    g(centre, centre) = -2;
    lab.push_back("Sigma+");
    return {g, lab};
}

enum class Generator { S, Sprime };

inline bool is_cusp_or_parabolic(int p, int q, int r)
{
    // 1/p + 1/q + 1/r <= 1
    return p >= 2 && q >= 2 && r >= 2 && q * r + r * p + p * q <= p * q * r;
}

inline bool is_cusp(int p, int q, int r)
{
    return p >= 2 && q >= 2 && r >= 2 && q * r + r * p + p * q < p * q * r;
}

// rank p+q+r-1; S appends Sigma- (same pairings as Sigma+, Sigma+.Sigma- = -2),
// S' appends T^2 = Sigma+ - Sigma-, which pairs to zero with everything
inline GramLattice t_tilde_lattice(int p, int q, int r, Generator gen)
{
    if (!is_cusp_or_parabolic(p, q, r))
        throw Error(ErrorKind::invalid_argument, "t_tilde_lattice: need 1/p+1/q+1/r <= 1");
    GramLattice t = t_lattice(p, q, r);
    const std::size_t n = t.rank();
    IntMatrix g(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = t.gram(i, j);
    auto lab = t.labels;
    if (gen == Generator::S) {
        for (std::size_t i = 0; i < n; ++i) g(n, i) = g(i, n) = t.gram(n - 1, i);
        g(n, n) = -2;
        lab.push_back("Sigma-");
    } else {
        lab.push_back("T2");
    }
    return {g, lab};
}

// E_k = T(2,3,k-3), negative definite for k <= 8
inline GramLattice e_lattice(int k)
{
    if (k < 6 || k > 10)
        throw Error(ErrorKind::invalid_argument, "e_lattice: k must be in 6..10");
    return t_lattice(2, 3, k - 3);
}

inline Int discriminant(const GramLattice& l) { return determinant(l.gram); }

// exact congruence diagonalisation over Q
inline Signature signature(const GramLattice& l)
{
    const std::size_t n = l.rank();
    RatMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = Rational(l.gram(i, j));
    Signature s;
    for (std::size_t k = 0; k < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, p) == 0) ++p;
            if (p < n) {
                a.swap_rows(k, p);
                a.swap_cols(k, p);
            } else {
                std::size_t j = k + 1;
                while (j < n && a(k, j) == 0) ++j;
                if (j == n) {
                    ++s.zero;
                    continue;
                }
                // e_k -> e_k + e_j; new diagonal entry is 2 a(k,j)
                for (std::size_t c = 0; c < n; ++c) a(k, c) += a(j, c);
                for (std::size_t r = 0; r < n; ++r) a(r, k) += a(r, j);
            }
        }
        const Rational piv = a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rational f = a(i, k) / piv;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
        }
        for (std::size_t i = k + 1; i < n; ++i) a(k, i) = a(i, k) = 0;
        if (piv > 0) ++s.pos;
        else ++s.neg;
    }
    return s;
}

inline Parity parity(const GramLattice& l)
{
    for (std::size_t i = 0; i < l.rank(); ++i)
        if (l.gram(i, i) % 2 != 0) return Parity::odd;
    return Parity::even;
}

struct SNFResult {
    std::vector<Int> factors; // d_1 | d_2 | ... , non-negative
    IntMatrix U, V, D;        // U * G * V = D
};

inline SNFResult smith_normal_form(const IntMatrix& g)
{
    const std::size_t n = g.rows(), m = g.cols();
    IntMatrix A = g, U = IntMatrix::identity(n), V = IntMatrix::identity(m);
    const std::size_t r = std::min(n, m);
    auto row_add = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t c = 0; c < m; ++c) A(dst, c) += f * A(src, c);
        for (std::size_t c = 0; c < n; ++c) U(dst, c) += f * U(src, c);
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t i = 0; i < n; ++i) A(i, dst) += f * A(i, src);
        for (std::size_t i = 0; i < m; ++i) V(i, dst) += f * V(i, src);
    };
    for (std::size_t k = 0; k < r; ++k) {
        for (;;) {
            // smallest nonzero entry of the trailing block as pivot
            std::size_t pi = n, pj = m;
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = k; j < m; ++j)
                    if (A(i, j) != 0 && (pi == n || abs(A(i, j)) < abs(A(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == n) goto done;
            if (pi != k) {
                A.swap_rows(pi, k);
                U.swap_rows(pi, k);
            }
            if (pj != k) {
                A.swap_cols(pj, k);
                V.swap_cols(pj, k);
            }
            bool clean = true;
            for (std::size_t i = k + 1; i < n; ++i)
                if (A(i, k) != 0) {
                    Int q = floor_div(A(i, k), A(k, k));
                    row_add(i, k, -q);
                    if (A(i, k) != 0) clean = false;
                }
            for (std::size_t j = k + 1; j < m; ++j)
                if (A(k, j) != 0) {
                    Int q = floor_div(A(k, j), A(k, k));
                    col_add(j, k, -q);
                    if (A(k, j) != 0) clean = false;
                }
            if (!clean) continue;
            // pivot must divide the whole trailing block
            std::size_t bad = n;
            for (std::size_t i = k + 1; i < n && bad == n; ++i)
                for (std::size_t j = k + 1; j < m; ++j)
                    if (A(i, j) % A(k, k) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == n) break;
            row_add(k, bad, 1);
        }
        if (A(k, k) < 0) {
            for (std::size_t c = 0; c < m; ++c) A(k, c) = -A(k, c);
            for (std::size_t c = 0; c < n; ++c) U(k, c) = -U(k, c);
        }
    }
done:
    SNFResult out;
    for (std::size_t k = 0; k < r; ++k) out.factors.push_back(A(k, k));
    out.U = U;
    out.V = V;
    out.D = A;
    return out;
}

inline SNFResult smith_normal_form(const GramLattice& l) { return smith_normal_form(l.gram); }

// integer kernel basis (columns of V at zero invariant factors)
inline std::vector<std::vector<Int>> radical(const GramLattice& l)
{
    auto snf = smith_normal_form(l);
    std::vector<std::vector<Int>> out;
    for (std::size_t j = 0; j < l.rank(); ++j)
        if (j >= snf.factors.size() || snf.factors[j] == 0) out.push_back(snf.V.column(j));
    return out;
}

// Gram matrix of the basis given by the columns of B: B^T G B
inline IntMatrix congruent(const IntMatrix& g, const IntMatrix& b) { return b.transpose() * g * b; }

inline bool is_unimodular(const GramLattice& l) { return abs(discriminant(l)) == 1; }

// indefinite odd/even unimodular lattices are classified by rank, signature and parity
inline bool unimodular_indefinite_isomorphic(const GramLattice& x, const GramLattice& y)
{
    for (const GramLattice* l : {&x, &y}) {
        if (!is_unimodular(*l))
            throw Error(ErrorKind::not_unimodular, "lattice is not unimodular");
        auto s = signature(*l);
        if (s.pos == 0 || s.neg == 0)
            throw Error(ErrorKind::definite, "lattice is definite");
    }
    return x.rank() == y.rank() && signature(x) == signature(y) && parity(x) == parity(y);
}

} // namespace k3fib
