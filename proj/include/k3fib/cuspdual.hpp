#pragma once

#include "quadfield.hpp"
#include "quadlattice.hpp"
#include "sl2z.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace k3fib {

struct Triple {
    int p = 0, q = 0, r = 0;

    Triple() = default;
    Triple(int p_, int q_, int r_) : p(p_), q(q_), r(r_) {}

    Triple sorted() const
    {
        std::array<int, 3> v{p, q, r};
        std::sort(v.begin(), v.end());
        return {v[0], v[1], v[2]};
    }
    bool cusp() const { return is_cusp(p, q, r); }
    std::string str() const { return "(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")"; }

    friend bool operator==(const Triple& x, const Triple& y) { return x.p == y.p && x.q == y.q && x.r == y.r; }
    friend bool operator!=(const Triple& x, const Triple& y) { return !(x == y); }
    friend bool operator<(const Triple& x, const Triple& y)
    {
        return std::tie(x.p, x.q, x.r) < std::tie(y.p, y.q, y.r);
    }
};

inline SL2 monodromy_matrix(const Triple& t) { return monodromy_matrix(t.p, t.q, t.r); }

// Cyclic resolution cycle (c_1, ..., c_k). For k = 1, c_1 is the normal Euler number -C_1^2 + 2.
class CycleData {
public:
    CycleData() = default;
    explicit CycleData(std::vector<int> c) : c_(std::move(c))
    {
        if (c_.empty()) throw Error(ErrorKind::invalid_argument, "empty cycle");
        bool big = false;
        for (int x : c_) {
            if (x < 2) throw Error(ErrorKind::invalid_argument, "cycle entries must be >= 2");
            if (x >= 3) big = true;
        }
        if (!big) throw Error(ErrorKind::invalid_argument, "cycle needs an entry >= 3");
    }

    const std::vector<int>& entries() const { return c_; }
    std::size_t size() const { return c_.size(); }
    int operator[](std::size_t i) const { return c_[i]; }

    CycleData rotated(std::size_t k) const
    {
        std::vector<int> v(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[(i + k) % c_.size()];
        return CycleData(v);
    }

    // lexicographically least rotation that starts with an entry >= 3
    CycleData canonical() const
    {
        std::optional<std::vector<int>> best;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] < 3) continue;
            auto v = rotated(k).entries();
            if (!best || v < *best) best = v;
        }
        return CycleData(*best);
    }

    bool cyclically_equal(const CycleData& o) const { return canonical().entries() == o.canonical().entries(); }

    std::string str() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + std::to_string(c_[i]);
        return s + ")";
    }

    friend bool operator==(const CycleData& x, const CycleData& y) { return x.c_ == y.c_; }

private:
    std::vector<int> c_;
};

inline CycleData triple_to_cycle(int p, int q, int r)
{
    if (!is_cusp(p, q, r))
        throw Error(ErrorKind::invalid_argument, "triple_to_cycle: not a cusp triple");
    Triple t = Triple(p, q, r).sorted();
    if (t.p >= 3) return CycleData({t.q - 1, t.r - 1, t.p - 1});
    if (t.q >= 4) return CycleData({t.q - 2, t.r - 2});
    return CycleData({t.r - 4});
}

inline CycleData triple_to_cycle(const Triple& t) { return triple_to_cycle(t.p, t.q, t.r); }

// inverse of triple_to_cycle: blow up a length-1 or length-2 cycle back to three curves
inline std::optional<Triple> cycle_to_triple(const CycleData& d)
{
    const auto& e = d.entries();
    switch (e.size()) {
    case 1: return Triple(2, 3, e[0] + 4);
    case 2: return Triple(2, e[0] + 2, e[1] + 2).sorted();
    case 3: return Triple(e[0] + 1, e[1] + 1, e[2] + 1).sorted();
    default: return std::nullopt;
    }
}

// c = gamma_1, 2^{delta_n - 3}, gamma_2, 2^{delta_{n-1} - 3}, ...  ->
// (d_l, ..., d_1) = 2^{gamma_1 - 3}, delta_n, 2^{gamma_2 - 3}, delta_{n-1}, ...
inline CycleData dual_cycle(const CycleData& c)
{
    std::size_t start = 0;
    while (c[start] < 3) ++start;
    CycleData rc = c.rotated(start);
    std::vector<int> gammas, runs;
    for (int x : rc.entries()) {
        if (x >= 3) {
            gammas.push_back(x);
            runs.push_back(0);
        } else {
            ++runs.back();
        }
    }
    const std::size_t n = gammas.size();
    // run after gamma_i has length delta_{n+1-i} - 3
    std::vector<int> delta(n + 1);
    for (std::size_t i = 1; i <= n; ++i) delta[n + 1 - i] = runs[i - 1] + 3;
    std::vector<int> L;
    for (std::size_t i = 1; i <= n; ++i) {
        for (int k = 0; k < gammas[i - 1] - 3; ++k) L.push_back(2);
        L.push_back(delta[n + 1 - i]);
    }
    std::reverse(L.begin(), L.end());
    return CycleData(L);
}

struct DualError : Error {
    using Error::Error;
};

inline Triple dual_triple(const Triple& t)
{
    auto d = dual_cycle(triple_to_cycle(t));
    auto out = cycle_to_triple(d);
    if (!out)
        throw DualError(ErrorKind::precondition, "dual cycle " + d.str() + " is longer than 3");
    return *out;
}

// M_C = F(c_1) ... F(c_k), F(c) = (c,-1;1,0) the Moebius map x -> c - 1/x
inline SL2 cycle_matrix(const CycleData& c)
{
    SL2 m;
    for (int x : c.entries()) m = m * SL2(x, -1, 1, 0);
    return m;
}

// repeating modified continued fraction [[c_1 ... c_k]]: the fixed point > 1 of M_C
inline QuadIrrational cf_value(const CycleData& c)
{
    SL2 m = cycle_matrix(c);
    // c x^2 + (d - a) x - b = 0
    Int D = m.trace() * m.trace() - 4;
    if (D <= 0) throw Error(ErrorKind::internal, "cf_value: cycle matrix is not hyperbolic");
    QuadIrrational r1(m.a() - m.d(), 1, 2 * m.c(), D);
    QuadIrrational r2(m.a() - m.d(), -1, 2 * m.c(), D);
    QuadIrrational one = QuadIrrational::integer(1, r1.d());
    QuadIrrational zero = QuadIrrational::integer(0, r1.d());
    if (r2 > one) std::swap(r1, r2);
    if (!(r1 > one) || !(r2 > zero) || !(r2 < one))
        throw Error(ErrorKind::internal, "cf_value: unexpected root location");
    return r1;
}

inline QuadIrrational moebius(const SL2& m, const QuadIrrational& x)
{
    QuadIrrational a = QuadIrrational::integer(m.a(), x.d()), b = QuadIrrational::integer(m.b(), x.d());
    QuadIrrational c = QuadIrrational::integer(m.c(), x.d()), d = QuadIrrational::integer(m.d(), x.d());
    return (a * x + b) / (c * x + d);
}

inline QuadIrrational alpha_v(const CycleData& c)
{
    QuadIrrational out = QuadIrrational::integer(1, cf_value(c).d());
    for (std::size_t k = 0; k < c.size(); ++k) out = out * cf_value(c.rotated(k));
    return out;
}

namespace detail {

// beta = x + y omega with x, y integers
inline std::pair<Int, Int> module_coords(const QuadIrrational& beta, const QuadIrrational& omega)
{
    // y = (b_beta / c_beta) / (b_omega / c_omega)
    Rational y(beta.b() * omega.c(), beta.c() * omega.b());
    QuadIrrational rest = beta - omega * QuadIrrational(numerator(y), 0, denominator(y), omega.d());
    if (denominator(y) != 1 || !rest.is_rational() || rest.c() != 1)
        throw Error(ErrorKind::internal, "alpha_V does not preserve the module Z + Z omega");
    return {rest.a(), numerator(y)};
}

} // namespace detail

// alpha_V (1, omega)^T = M (1, omega)^T; rows are the coordinates of alpha_V and alpha_V omega
inline SL2 module_action_matrix(const CycleData& c)
{
    QuadIrrational w = cf_value(c), al = alpha_v(c);
    auto [x1, y1] = detail::module_coords(al, w);
    auto [x2, y2] = detail::module_coords(al * w, w);
    return SL2(x1, y1, x2, y2);
}

// column form: columns are the coordinates of alpha_V and alpha_V omega
inline SL2 multiplication_matrix(const CycleData& c) { return module_action_matrix(c).transpose(); }

// cusp link monodromy read off a resolution cycle: prod (0,1;-1,c_j)
inline SL2 cycle_link_monodromy(const CycleData& c)
{
    SL2 m;
    for (int x : c.entries()) m = m * SL2(0, 1, -1, x);
    return m;
}

struct DualityReport {
    Triple triple, dual;
    CycleData cycle_c, cycle_d; // C for the triple itself, D = triple_to_cycle(triple)
    QuadIrrational omega_c, omega_d, alpha_c, alpha_d;
    bool alpha_equal = false;
    SL2 monodromy, dual_monodromy, action_c, action_d;
    std::optional<ConjugacyCertificate> monodromy_vs_action;      // A ~ action(C)
    std::optional<ConjugacyCertificate> dual_monodromy_vs_action; // A' ~ action(D)
    std::optional<ConjugacyCertificate> monodromy_vs_dual_inverse; // A ~ A'^{-1}
    std::optional<ConjugacyCertificate> actions_inverse;          // action(C) ~ action(D)^{-1}
    bool actions_directly_conjugate = false;

    bool ok() const
    {
        auto good = [](const std::optional<ConjugacyCertificate>& c) { return c && c->verify(); };
        return alpha_equal && good(monodromy_vs_action) && good(dual_monodromy_vs_action) &&
               good(monodromy_vs_dual_inverse) && good(actions_inverse);
    }
};

inline DualityReport verify_duality(const Triple& input)
{
    DualityReport rep;
    rep.triple = input.sorted();
    rep.cycle_d = triple_to_cycle(rep.triple).canonical();
    rep.cycle_c = dual_cycle(rep.cycle_d).canonical();
    auto dt = cycle_to_triple(rep.cycle_c);
    if (!dt)
        throw DualError(ErrorKind::precondition, "dual cycle " + rep.cycle_c.str() + " is longer than 3");
    rep.dual = *dt;
    rep.omega_c = cf_value(rep.cycle_c);
    rep.omega_d = cf_value(rep.cycle_d);
    rep.alpha_c = alpha_v(rep.cycle_c);
    rep.alpha_d = alpha_v(rep.cycle_d);
    rep.alpha_equal = rep.alpha_c == rep.alpha_d;
    rep.monodromy = monodromy_matrix(rep.triple);
    rep.dual_monodromy = monodromy_matrix(rep.dual);
    rep.action_c = module_action_matrix(rep.cycle_c);
    rep.action_d = module_action_matrix(rep.cycle_d);
    rep.monodromy_vs_action = is_conjugate(rep.monodromy, rep.action_c);
    rep.dual_monodromy_vs_action = is_conjugate(rep.dual_monodromy, rep.action_d);
    rep.monodromy_vs_dual_inverse = is_conjugate_to_inverse(rep.monodromy, rep.dual_monodromy);
    rep.actions_inverse = is_conjugate_to_inverse(rep.action_c, rep.action_d);
    rep.actions_directly_conjugate = is_conjugate(rep.action_c, rep.action_d).has_value();
    return rep;
}

} // namespace k3fib
