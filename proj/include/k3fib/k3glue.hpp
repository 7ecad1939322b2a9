#pragma once

#include "cuspdual.hpp"
#include "milnorfiber.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace k3fib {

struct DualPair {
    Triple first, second;
    std::string label_first, label_second;
    bool self_dual() const { return first == second; }
};

inline const std::vector<DualPair>& strange_duality_table()
{
    static const std::vector<DualPair> table = {
        {{2, 3, 7}, {2, 3, 7}, "E12", "E12"},
        {{2, 4, 5}, {2, 3, 8}, "Z11", "E13"},
        {{3, 3, 4}, {2, 3, 9}, "Q10", "E14"},
        {{2, 4, 6}, {2, 4, 6}, "Z12", "Z12"},
        {{3, 3, 5}, {2, 4, 7}, "Q11", "Z13"},
        {{3, 3, 6}, {3, 3, 6}, "Q12", "Q12"},
        {{2, 5, 5}, {2, 5, 5}, "W12", "W12"},
        {{3, 4, 4}, {2, 5, 6}, "S11", "W13"},
        {{3, 4, 5}, {3, 4, 5}, "S12", "S12"},
        {{4, 4, 4}, {4, 4, 4}, "U12", "U12"},
    };
    return table;
}

// the 14 triples of the table, sorted
inline std::vector<Triple> table_triples()
{
    std::vector<Triple> out;
    for (auto& p : strange_duality_table()) {
        out.push_back(p.first);
        if (!p.self_dual()) out.push_back(p.second);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::optional<DualPair> find_pair(const Triple& t)
{
    Triple s = t.sorted();
    for (auto& p : strange_duality_table())
        if (p.first == s || p.second == s) return p;
    return std::nullopt;
}

inline void require_table_pair(const DualPair& pair)
{
    for (auto& p : strange_duality_table())
        if ((p.first == pair.first && p.second == pair.second) || (p.first == pair.second && p.second == pair.first))
            return;
    throw Error(ErrorKind::invalid_argument, "not a pair of the strange duality table");
}

inline int critical_count(const DualPair& pair)
{
    require_table_pair(pair);
    return pair.first.p + pair.first.q + pair.first.r + pair.second.p + pair.second.q + pair.second.r;
}

// 8 fibres of type I_1 (Euler number 1) and two of type IV* (Euler number 8)
static_assert(8 * 1 + 2 * 8 == 24, "singular fibre Euler count of the Inose fibration");

struct GluedLattice {
    GramLattice lattice;
    Int det;
    Signature sig;
    Parity par;
    bool unimodular;
    std::optional<bool> iso_2e8_3h; // set when the indefinite unimodular test applies
    std::optional<ConjugacyCertificate> boundary_gluing; // A ~ A'^{-1}
};

// Gram of span(section, fibre) in the K3: sigma^2 = -2, sigma.F = 1, F^2 = 0
inline GramLattice section_fibre_block()
{
    return {IntMatrix{{-2, 1}, {1, 0}}, {"section", "fibre"}};
}

// (section + fibre, fibre) carries the block above to H
inline IntMatrix section_fibre_to_h() { return IntMatrix{{1, 0}, {1, 1}}; }

inline GramLattice two_e8_three_h()
{
    auto e8 = e_lattice(8);
    auto h = hyperbolic_plane();
    return direct_sum({e8, e8, h, h, h});
}

inline GluedLattice glued_lattice(const DualPair& pair)
{
    require_table_pair(pair);
    GramLattice sf = section_fibre_block();
    GramLattice h(congruent(sf.gram, section_fibre_to_h()), {"section+fibre", "fibre"});
    GluedLattice g;
    g.lattice = direct_sum({t_lattice(pair.first.p, pair.first.q, pair.first.r),
                            t_lattice(pair.second.p, pair.second.q, pair.second.r), h});
    g.det = discriminant(g.lattice);
    g.sig = signature(g.lattice);
    g.par = parity(g.lattice);
    g.unimodular = abs(g.det) == 1;
    if (g.unimodular && g.sig.pos > 0 && g.sig.neg > 0)
        g.iso_2e8_3h = unimodular_indefinite_isomorphic(g.lattice, two_e8_three_h());
    g.boundary_gluing = is_conjugate_to_inverse(monodromy_matrix(pair.first), monodromy_matrix(pair.second));
    return g;
}

struct InoseCase {
    std::array<int, 4> c{}; // roots per quadrant

    InoseCase() = default;
    InoseCase(int c1, int c2, int c3, int c4) : c{c1, c2, c3, c4}
    {
        int s = 0;
        for (int x : c) {
            if (x < 0 || x > 2) throw Error(ErrorKind::invalid_argument, "Inose quadrant counts must be in {0,1,2}");
            s += x;
        }
        if (s > 8) throw Error(ErrorKind::invalid_argument, "Inose quadrant counts sum above 8");
    }
    std::string str() const
    {
        return std::to_string(c[0]) + "," + std::to_string(c[1]) + "," + std::to_string(c[2]) + "," + std::to_string(c[3]);
    }
};

// (tau_a tau_b)^4 tau_a^{c4} tau_b^{c3} tau_g^{c2} tau_a^{c1}
inline TwistWord inose_word(const InoseCase& k, const HomologyClass& gamma = class_gamma())
{
    TwistWord w;
    for (int i = 0; i < 4; ++i) {
        w.push_back({class_alpha(), 1});
        w.push_back({class_beta(), 1});
    }
    w.push_back({class_alpha(), k.c[3]});
    w.push_back({class_beta(), k.c[2]});
    w.push_back({gamma, k.c[1]});
    w.push_back({class_alpha(), k.c[0]});
    return w;
}

inline SL2 inose_monodromy(const InoseCase& k, const HomologyClass& gamma = class_gamma())
{
    return evaluate_word(inose_word(k, gamma));
}

enum class Orientation { direct, inverse };

inline const char* to_string(Orientation o) { return o == Orientation::direct ? "direct" : "inverse"; }

struct InoseClassification {
    SL2 monodromy;
    std::optional<Triple> boundary;     // unique match under the inverse orientation
    std::optional<ConjugacyCertificate> certificate;
    std::vector<Triple> direct_matches;  // M ~ A_t
    std::vector<Triple> inverse_matches; // M ~ A_t^{-1}
};

// The disc boundary is oriented opposite to the link, so M is compared with A^{-1};
// matches under the other orientation are listed too.
inline InoseClassification classify_inose_boundary(const InoseCase& k)
{
    InoseClassification out;
    out.monodromy = inose_monodromy(k);
    for (auto& t : table_triples()) {
        SL2 a = monodromy_matrix(t);
        if (is_conjugate(out.monodromy, a)) out.direct_matches.push_back(t);
        if (auto cert = is_conjugate(out.monodromy, a.inverse())) {
            out.inverse_matches.push_back(t);
            if (!out.certificate) out.certificate = cert;
        }
    }
    if (out.inverse_matches.size() == 1) out.boundary = out.inverse_matches.front();
    else out.certificate.reset();
    return out;
}

// the four cases of the classification, with the triples they bound
inline std::vector<std::pair<InoseCase, Triple>> inose_reference_cases()
{
    return {{InoseCase(0, 0, 2, 2), Triple(2, 3, 7)},
            {InoseCase(0, 2, 0, 2), Triple(2, 5, 5)},
            {InoseCase(0, 1, 0, 2), Triple(2, 4, 5)},
            {InoseCase(0, 2, 1, 2), Triple(2, 3, 8)}};
}

} // namespace k3fib
