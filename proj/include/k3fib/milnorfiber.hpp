#pragma once

#include "quadlattice.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace k3fib {

struct SurfaceSystem {
    int p, q, r;
    Generator gen;
    GramLattice lattice;
    // expansion of Sigma_{m,0} (m = 1,2,3) in the chosen basis
    std::array<std::vector<Int>, 3> sigma0;
    std::size_t t2_index = 0; // only meaningful for S'

    std::size_t rank() const { return lattice.rank(); }
    std::size_t arm_offset(int m) const
    {
        const int len[3] = {p - 1, q - 1, r - 1};
        std::size_t off = 0;
        for (int i = 0; i < m - 1; ++i) off += static_cast<std::size_t>(len[i]);
        return off;
    }
    std::size_t sigma_index(int m, int j) const { return arm_offset(m) + static_cast<std::size_t>(j - 1); }
    std::size_t sigma_plus_index() const { return static_cast<std::size_t>(p + q + r - 3); }

    // pairing of two coefficient vectors
    Int pair(const std::vector<Int>& x, const std::vector<Int>& y) const
    {
        Int s = 0;
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j) s += x[i] * lattice.gram(i, j) * y[j];
        return s;
    }

    std::vector<Int> unit(std::size_t i) const
    {
        std::vector<Int> v(rank());
        v[i] = 1;
        return v;
    }
};

inline SurfaceSystem surface_system(int p, int q, int r, Generator gen)
{
    if (!is_cusp_or_parabolic(p, q, r))
        throw Error(ErrorKind::invalid_argument, "surface_system: need p,q,r >= 2 and 1/p+1/q+1/r <= 1");
    SurfaceSystem s{p, q, r, gen, t_tilde_lattice(p, q, r, gen), {}, 0};
    const std::size_t n = s.rank();
    // [T^2] in the basis: S' -> unit vector, S -> Sigma+ - Sigma-
    std::vector<Int> t2(n);
    if (gen == Generator::Sprime) {
        s.t2_index = n - 1;
        t2[n - 1] = 1;
    } else {
        t2[n - 2] = 1;
        t2[n - 1] = -1;
    }
    const int len[3] = {p - 1, q - 1, r - 1};
    for (int m = 1; m <= 3; ++m) {
        auto v = t2;
        for (int j = 1; j <= len[m - 1]; ++j) v[s.sigma_index(m, j)] -= 1;
        s.sigma0[m - 1] = v;
    }
    return s;
}

// mu_* on the S' basis, columns are images
inline IntMatrix monodromy_action(int p, int q, int r)
{
    SurfaceSystem s = surface_system(p, q, r, Generator::Sprime);
    const std::size_t n = s.rank();
    IntMatrix mu(n, n);
    const int len[3] = {p - 1, q - 1, r - 1};
    for (int m = 1; m <= 3; ++m) {
        for (int j = 1; j <= len[m - 1]; ++j) {
            std::size_t col = s.sigma_index(m, j);
            if (j < len[m - 1]) {
                mu(s.sigma_index(m, j + 1), col) = 1;
            } else {
                // wraps to Sigma_{m,0} = T^2 - sum_j Sigma_{m,j}
                for (std::size_t i = 0; i < n; ++i) mu(i, col) = s.sigma0[m - 1][i];
            }
        }
    }
    const std::size_t sp = s.sigma_plus_index();
    mu(sp, sp) = 1;
    for (int m = 1; m <= 3; ++m) mu(s.sigma_index(m, 1), sp) += 1;
    mu(s.t2_index, sp) -= 1;
    mu(s.t2_index, s.t2_index) = 1;
    return mu;
}

// pairing of the section class with the S' basis
inline std::vector<Int> section_vector(int p, int q, int r)
{
    SurfaceSystem s = surface_system(p, q, r, Generator::Sprime);
    std::vector<Int> v(s.rank());
    v[s.t2_index] = 1;
    return v;
}

inline Int section_pairing(const std::vector<Int>& sec, const std::vector<Int>& cls)
{
    Int s = 0;
    for (std::size_t i = 0; i < sec.size(); ++i) s += sec[i] * cls[i];
    return s;
}

// S -> S' change of basis: columns express the S' basis in the S basis
// (Sigma's and Sigma+ unchanged, T^2 = Sigma+ - Sigma-)
inline IntMatrix s_to_sprime(int p, int q, int r)
{
    const std::size_t n = static_cast<std::size_t>(p + q + r - 1);
    IntMatrix b = IntMatrix::identity(n);
    b(n - 2, n - 1) = 1;
    b(n - 1, n - 1) = -1;
    return b;
}

// For (2,3,7), the reordering (Sigma_{2,2}, Sigma_{2,1}, Sigma+, Sigma_{3,1..6}, Sigma_{1,1}, T^2)
// whose leading 10x10 block is the negative of the E_10 Cartan matrix.
inline std::vector<std::size_t> e10_permutation()
{
    SurfaceSystem s = surface_system(2, 3, 7, Generator::Sprime);
    std::vector<std::size_t> perm = {s.sigma_index(2, 2), s.sigma_index(2, 1), s.sigma_plus_index()};
    for (int j = 1; j <= 6; ++j) perm.push_back(s.sigma_index(3, j));
    perm.push_back(s.sigma_index(1, 1));
    perm.push_back(s.t2_index);
    return perm;
}

// Cartan matrix of E_10 in the chain ordering: A_9 on the first nine nodes, the tenth attached to node 3
inline IntMatrix e10_cartan()
{
    IntMatrix c(10, 10);
    for (std::size_t i = 0; i < 9; ++i) {
        c(i, i) = 2;
        if (i + 1 < 9) c(i, i + 1) = c(i + 1, i) = -1;
    }
    c(9, 9) = 2;
    c(2, 9) = c(9, 2) = -1;
    return c;
}

inline IntMatrix permuted(const IntMatrix& g, const std::vector<std::size_t>& perm)
{
    IntMatrix out(perm.size(), perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = 0; j < perm.size(); ++j) out(i, j) = g(perm[i], perm[j]);
    return out;
}

} // namespace k3fib
