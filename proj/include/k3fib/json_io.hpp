#pragma once

#include "cuspdual.hpp"
#include "k3glue.hpp"
#include "numcheck.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace k3fib::io {

using json = nlohmann::json;

// integers that fit in int64 are numbers, larger ones decimal strings
inline json to_json(const Int& v)
{
    if (fits_int64(v)) return v.convert_to<long long>();
    return v.str();
}

inline Int int_from_json(const json& j)
{
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw Error(ErrorKind::invalid_argument, "expected an integer, got " + j.dump());
}

inline json to_json(const SL2& m)
{
    return json::array({json::array({to_json(m.a()), to_json(m.b())}), json::array({to_json(m.c()), to_json(m.d())})});
}

inline SL2 sl2_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 || j[1].size() != 2)
        throw Error(ErrorKind::invalid_argument, "expected [[a,b],[c,d]]");
    return SL2(int_from_json(j[0][0]), int_from_json(j[0][1]), int_from_json(j[1][0]), int_from_json(j[1][1]));
}

inline json to_json(const IntMatrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
        rows.push_back(row);
    }
    return rows;
}

inline IntMatrix int_matrix_from_json(const json& j)
{
    if (!j.is_array()) throw Error(ErrorKind::invalid_argument, "expected a matrix");
    const std::size_t rows = j.size(), cols = rows ? j[0].size() : 0;
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw Error(ErrorKind::invalid_argument, "ragged matrix");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = int_from_json(j[i][k]);
    }
    return m;
}

inline json to_json(const GramLattice& l) { return {{"labels", l.labels}, {"gram", to_json(l.gram)}}; }

inline GramLattice lattice_from_json(const json& j)
{
    return GramLattice(int_matrix_from_json(j.at("gram")), j.at("labels").get<std::vector<std::string>>());
}

inline json to_json(const TwistWord& w)
{
    json out = json::array();
    for (auto& l : w) out.push_back({{"class", json::array({to_json(l.cls.m), to_json(l.cls.n)})}, {"exp", l.exp}});
    return out;
}

inline TwistWord twist_word_from_json(const json& j)
{
    if (!j.is_array()) throw Error(ErrorKind::invalid_argument, "expected a twist word array");
    TwistWord w;
    for (auto& l : j) {
        const json& c = l.at("class");
        if (!c.is_array() || c.size() != 2) throw Error(ErrorKind::invalid_argument, "twist class must be [m,n]");
        w.push_back({HomologyClass(int_from_json(c[0]), int_from_json(c[1])), l.at("exp").get<long long>()});
    }
    return w;
}

inline json to_json(const QuadIrrational& x)
{
    return {{"a", to_json(x.a())}, {"b", to_json(x.b())}, {"c", to_json(x.c())}, {"d", to_json(x.d())}};
}

inline QuadIrrational quad_from_json(const json& j)
{
    return QuadIrrational(int_from_json(j.at("a")), int_from_json(j.at("b")), int_from_json(j.at("c")), int_from_json(j.at("d")));
}

inline json to_json(const Triple& t) { return json::array({t.p, t.q, t.r}); }

inline Triple triple_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 3) throw Error(ErrorKind::invalid_argument, "expected [p,q,r]");
    return Triple(j[0].get<int>(), j[1].get<int>(), j[2].get<int>());
}

inline json to_json(const CycleData& c) { return c.entries(); }

inline CycleData cycle_from_json(const json& j) { return CycleData(j.get<std::vector<int>>()); }

inline json to_json(const ConjugacyCertificate& c)
{
    return {{"conjugator", to_json(c.conjugator)}, {"source", to_json(c.source)}, {"target", to_json(c.target)},
            {"verified", c.verify()}};
}

inline ConjugacyCertificate certificate_from_json(const json& j)
{
    return {sl2_from_json(j.at("conjugator")), sl2_from_json(j.at("source")), sl2_from_json(j.at("target"))};
}

inline json to_json(const std::optional<ConjugacyCertificate>& c) { return c ? to_json(*c) : json(nullptr); }

inline json to_json(const Signature& s) { return json::array({s.pos, s.zero, s.neg}); }

inline std::string boundary_name(const Triple& t)
{
    return "X_{" + std::to_string(t.p) + "," + std::to_string(t.q) + "," + std::to_string(t.r) + "}";
}

inline json to_json(const DualityReport& r)
{
    return {{"triple", to_json(r.triple)},
            {"dual", to_json(r.dual)},
            {"cycle", to_json(r.cycle_d)},
            {"dual_cycle", to_json(r.cycle_c)},
            {"omega", r.omega_c.str()},
            {"omega_exact", to_json(r.omega_c)},
            {"dual_omega", r.omega_d.str()},
            {"alpha_v", r.alpha_c.str()},
            {"alpha_v_exact", to_json(r.alpha_c)},
            {"alpha_v_dual", r.alpha_d.str()},
            {"alpha_v_equal", r.alpha_equal},
            {"monodromy", to_json(r.monodromy)},
            {"dual_monodromy", to_json(r.dual_monodromy)},
            {"module_action", to_json(r.action_c)},
            {"dual_module_action", to_json(r.action_d)},
            {"monodromy_vs_action", to_json(r.monodromy_vs_action)},
            {"dual_monodromy_vs_action", to_json(r.dual_monodromy_vs_action)},
            {"monodromy_vs_dual_inverse", to_json(r.monodromy_vs_dual_inverse)},
            {"actions_inverse", to_json(r.actions_inverse)},
            {"actions_directly_conjugate", r.actions_directly_conjugate},
            {"ok", r.ok()}};
}

inline json to_json(const GluedLattice& g)
{
    json j = {{"rank", g.lattice.rank()},
              {"det", to_json(g.det)},
              {"signature", to_json(g.sig)},
              {"parity", to_string(g.par)},
              {"unimodular", g.unimodular},
              {"iso_2e8_3h", g.iso_2e8_3h ? json(*g.iso_2e8_3h) : json(nullptr)},
              {"boundary_gluing", to_json(g.boundary_gluing)}};
    return j;
}

inline json to_json(const InoseClassification& c)
{
    json direct = json::array(), inverse = json::array();
    for (auto& t : c.direct_matches) direct.push_back(to_json(t));
    for (auto& t : c.inverse_matches) inverse.push_back(to_json(t));
    return {{"monodromy", to_json(c.monodromy)},
            {"trace", to_json(c.monodromy.trace())},
            {"boundary", c.boundary ? json(boundary_name(*c.boundary)) : json(nullptr)},
            {"boundary_triple", c.boundary ? to_json(*c.boundary) : json(nullptr)},
            {"certificate", to_json(c.certificate)},
            {"direct_matches", direct},
            {"inverse_matches", inverse}};
}

inline json to_json(const num::C3Point& p)
{
    return json::array({json::array({p.x.real(), p.x.imag()}), json::array({p.y.real(), p.y.imag()}),
                        json::array({p.z.real(), p.z.imag()})});
}

inline num::C3Point point_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 3) throw Error(ErrorKind::invalid_argument, "expected three complex coordinates");
    auto c = [](const json& z) { return num::cplx(z.at(0).get<double>(), z.at(1).get<double>()); };
    return {c(j[0]), c(j[1]), c(j[2])};
}

} // namespace k3fib::io
